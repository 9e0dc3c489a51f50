#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "specaug/graph.hpp"

namespace specaug {

// All matrices live in an r-dimensional working space: the column span Q of
// L_{G+W}. The regularizing self-loops (reg · I in that space) are appended
// to the candidate list so that M̄ has full rank and X + M̄ = I.
struct SparsifyInstance {
  int n = 0;       // vertices
  int r = 0;       // working dimension
  int k = 0;       // budget (k = r in spectral mode)
  int T = 0;       // ⌈tr M̄⌉
  int Lambda = 0;  // max(k, T)
  double reg = 0.0;
  std::vector<Edge> items;  // candidate edges first, then self-loops (u == v)
  int num_edges = 0;
  Eigen::MatrixXd Q;            // n × r
  Eigen::MatrixXd Lr;           // Q^T L_{G+W} Q + reg I
  Eigen::MatrixXd Lr_inv_half;  // Lr^{-1/2}
  Eigen::MatrixXd LGr, LWr;     // Q^T L_G Q and Q^T L_W Q + reg I
  Eigen::MatrixXd S;            // r × m, columns s_i (√w Q^T b_e or √reg Q^T e_u)
  Eigen::MatrixXd V;            // r × m, columns v_i = Lr^{-1/2} s_i
  Eigen::MatrixXd X, Mbar;
  Eigen::VectorXd cost;  // w_i / Σ w
  bool spectral_mode = false;

  int m() const { return static_cast<int>(items.size()); }
};

double default_regularization(const WeightedGraph& g, const std::vector<Edge>& w_edges);

// Subgraph mode: base G, weighted candidates (weights > 0), budget k.
SparsifyInstance setup_instance(const WeightedGraph& g, const std::vector<Edge>& w_edges, double reg, int k);
// X = 0 mode: sparsify H itself; k = T = r and P_V = I.
SparsifyInstance setup_spectral_instance(const WeightedGraph& h, double reg);

enum class ProjectionMode { Exact, Approx };

struct ProjectionData {
  Eigen::MatrixXd V;            // r × k, orthonormal
  Eigen::MatrixXd Vbb;          // 𝕍 = Lr^{-1/2} V
  Eigen::MatrixXd P;            // V V^T
  Eigen::MatrixXd Mk_inv_half;  // (V^T M̄ V)^{-1/2}
  Eigen::MatrixXd Z;            // V Mk^{-1/2} V^T
  Eigen::MatrixXd G;            // k × m, Mk^{-1/2} V^T v_i
  double lambda_star = 0.0;     // λ_{k+1}(X), 0 when k = r
  double complement_min = 0.0;  // min Rayleigh quotient of X on V^⊥
  bool approx_used = false, fell_back = false;
};

ProjectionData compute_projection(const SparsifyInstance& inst, ProjectionMode mode, uint64_t seed);

// Σ over the top-T eigenvalues of (û − λ_i(A))^{-q}.
double upper_potential(const Eigen::MatrixXd& A, double u, int T, double q);
// Σ_i (λ_i(V^T B V) − ℓ)^{-q}; B is the full r × r matrix Z(A − X)Z.
double lower_potential(const Eigen::MatrixXd& B, double l, double q, const ProjectionData& proj);

// Bk = Mk^{-1/2} V^T (A − X) V Mk^{-1/2}, i.e. B restricted to span V.
Eigen::MatrixXd lower_block(const SparsifyInstance& inst, const ProjectionData& proj, const Eigen::MatrixXd& A);

struct SparsifyState {
  Eigen::MatrixXd A;
  double u = 0.0, l = 0.0;
  Eigen::VectorXd c;
  long j = 0;
};

SparsifyState initial_state(const SparsifyInstance& inst);

struct Resistances {
  Eigen::VectorXd upper, lower, total;
  double rho = 0.0, rho_upper = 0.0, rho_lower = 0.0;
  // spectral side information used by N_j
  double mu_min = 0.0, mu_max = 0.0, mu_trace = 0.0;  // of (uI − A)^{-1} M̄
  double lower_pinv_max = 0.0;                       // λ_max((P_V(B − ℓI)P_V)^†)
};

// Throws BarrierViolation when u ≤ λ_max(A) or λ_min(Bk) ≤ ℓ.
Resistances relative_resistances(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st);

struct SampleCountInfo {
  double value = 0.0;  // unfloored
  long count = 1;      // max(1, ⌊value⌋)
  double base = 0.0;   // bracketed factor, in (0, 1]
};
SampleCountInfo sample_count(const Resistances& res, double eps, double q);
double sample_count_constant(const SparsifyInstance& inst, double eps, double q);  // c_N

enum class Backend { Exact, Approx };

struct SparsifyOptions {
  double eps = 0.05;
  double q = 10.0;
  uint64_t seed = 0;
  Backend backend = Backend::Exact;
  ProjectionMode projection = ProjectionMode::Exact;
  double eps_a = 0.1;
  int retries = 5;
  int trace_limit = 200;
  long max_iterations = 0;  // 0: 10 × the round bound
  long stop_after = 0;      // >0: halt after this many iterations (state inspection)
  bool check_bounds = true;
};

struct IterationInfo {
  long j = 0;
  double u = 0, l = 0, rho = 0, phi_u = 0, phi_l = 0;
  long N = 0;
  long samples = 0;
};

struct SparsifierResult {
  Eigen::VectorXd c;  // per item (edges, then self-loops)
  SparsifyState state;
  long iterations = 0, samples = 0;
  double u0 = 0, l0 = 0, alpha = 0;
  double u_final = 0, l_final = 0;
  int support = 0;  // over real edges
  bool terminated = false;
  bool accepted = false;
  std::string failure;
  std::vector<IterationInfo> trace;
  std::vector<std::string> bound_violations;
  long approx_fallbacks = 0;
  double lambda_min_A = 0, lambda_max_A = 0, lambda_min_Bk = 0;
  double lambda_min_bound = 0;  // closed-form λ_min(A) lower bound
  double cost_sum = 0, cost_cap = 0;
  long K = 0;
  long iteration_cap = 0;
  int attempts = 0;
  double condition_ratio = 0;  // (û − ℓ̂)/û
};

long support_cap(int k, double eps, double q);

SparsifierResult run_sparsifier_once(const SparsifyInstance& inst, const SparsifyOptions& opt);
// Up to opt.retries seeded attempts; throws RetryExhausted if none is accepted.
SparsifierResult run_sparsifier(const SparsifyInstance& inst, const SparsifyOptions& opt);

// Draw an index with probability R_i / Σ R by cumulative-sum inversion.
int sample_index(const Eigen::VectorXd& cumulative, double uniform01);

// Exact evaluation of the single rank-one step inequalities for the scaled
// vector w = √(ε/(q R_i)) v_i at barriers (û, ℓ̂).
struct RankOneReport {
  bool preconditions = false;
  double slack_phi_u = 0, slack_phi_l = 0, slack_rho_u = 0, slack_rho_l = 0;
  double min_slack() const;
};
RankOneReport rank_one_check(const SparsifyInstance& inst, const ProjectionData& proj, const Eigen::MatrixXd& A,
                             double u_hat, double l_hat, const Eigen::VectorXd& w, double eps, double q);

// Coefficients mapped back to graph edges: weight c_e · w_e for each real edge with c_e > 0.
std::vector<Edge> coefficients_to_edges(const SparsifyInstance& inst, const Eigen::VectorXd& c);

}  // namespace specaug
