#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "specaug/graph.hpp"

namespace specaug {

// P-SDP(G, W, k, γ): find λ ≥ γ, 0 ≤ w ≤ 1, Σw ≤ k with
// L_G + Σ w_e L_e ⪰ λ Δ P_⊥. γ is in normalized units (target λ₂ = γΔ).
struct SdpInstance {
  WeightedGraph base;
  CandidateSet cand;
  int k = 0;
  double gamma = 0.0;

  int n() const { return base.n(); }
  int m() const { return static_cast<int>(cand.edges.size()); }
  double delta() const { return cand.delta; }
  void validate() const;
};

SdpInstance make_instance(const WeightedGraph& g, const std::vector<VertexPair>& cand, int k,
                          double gamma);

// E = Diag(ΔI, m, I), Π = Diag(P_⊥, 1, I), N = Diag(ΔP_⊥, m, I).
struct BlockMatrices {
  Eigen::MatrixXd E, Pi, N;
};
BlockMatrices assemble_blocks(const SdpInstance& inst);

// M(λ, w) = Diag(A, B, C).
struct LossMatrix {
  Eigen::MatrixXd A;
  double B = 0.0;
  Eigen::VectorXd C;
  double value = 0.0;  // V(λ, w) = λ
  Eigen::MatrixXd dense() const;
};
LossMatrix loss_matrix(const SdpInstance& inst, double lambda, const Eigen::VectorXd& w);

// Accumulated Σ_s M^(s), kept blockwise.
struct LossSum {
  Eigen::MatrixXd A;
  double B = 0.0;
  Eigen::VectorXd C;
  static LossSum zero(const SdpInstance& inst);
  void add(const LossMatrix& m);
};

// Decomposition of X = Diag(Z, v, Diag(β)).
struct SdpIterate {
  Eigen::MatrixXd Z;
  double v = 0.0;
  Eigen::VectorXd beta;
  double normalization(const SdpInstance& inst) const;  // X • N
  Eigen::MatrixXd dense() const;
};

// X = U_ε(loss_sum / (2ρ)). For m = 0 the (v, β) blocks are empty and v = 0.
SdpIterate mwu_update(const LossSum& loss_sum, double eps, double rho, const SdpInstance& inst);

// Same distribution as mwu_update, but Z is replaced by the JL-sketched
// Ỹ Ỹ^T with Ỹ = Y R (Z = Y Y^T) and the result renormalized to X • N = 1.
SdpIterate mwu_update_sketched(const LossSum& loss_sum, double eps, double rho,
                               const SdpInstance& inst, int sketch_dim, uint64_t seed);
int default_sketch_dim(int n);

struct OracleOutcome {
  bool fail = false;
  // Update branch
  double lambda = 0.0;
  Eigen::VectorXd w;
  int update_case = 0;  // 1: w = γ·1, 2: w = 1_B
  // Fail branch: rescaled dual certificate
  SdpIterate certificate;
  // diagnostics
  double T = 0.0, T_tol = 0.0, Gamma = 0.0;
};

OracleOutcome oracle(const SdpIterate& it, const SdpInstance& inst);

struct SolveOptions {
  double delta_prime = 0.1;
  bool use_sketch = false;
  int sketch_dim = 0;  // 0: default_sketch_dim(n)
  uint64_t seed = 0;
};

struct SolveParams {
  double delta = 0, eps = 0, rho = 3, ell = 1;
  long T = 0;
};
SolveParams solve_params(const SdpInstance& inst, double delta_prime);

struct SolveResult {
  bool feasible = false;
  double lambda = 0.0;     // λ̄ − 3δ
  Eigen::VectorXd w;       // max(w̄ − δ, 0)
  SdpIterate certificate;  // when infeasible
  long rounds = 0;
  SolveParams params;
  double level = 0.0;  // (1 − δ′) γ
};

SolveResult solve_psdp(const SdpInstance& inst, const SolveOptions& opt = {});

struct FeasibilityReport {
  bool ok = true;
  std::string reason;  // empty when ok
  double slack = 0.0;  // most violated quantity
};

FeasibilityReport verify_primal_feasible(const SdpInstance& inst, double lambda,
                                         const Eigen::VectorXd& w, double tol = 1e-6);
FeasibilityReport verify_dual_feasible(const SdpInstance& inst, const Eigen::MatrixXd& Z, double v,
                                       const Eigen::VectorXd& beta, double tol = 1e-6);

// min/max generalized eigenvalues of M relative to N on N's support (blockwise).
struct WidthReport {
  double min_ratio = 0.0, max_ratio = 0.0;
  bool within(double lo, double hi, double slack) const {
    return min_ratio >= lo - slack && max_ratio <= hi + slack;
  }
};
WidthReport oracle_width(const SdpInstance& inst, const LossMatrix& m);

}  // namespace specaug
