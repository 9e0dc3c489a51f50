#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "specaug/graph.hpp"

namespace specaug {

// Ground-truth helpers for small instances. The potential oracle below talks
// to Eigen directly and shares no matrix-function code with the sparsifier.

struct BruteForceResult {
  double lambda = 0.0;           // max λ₂(L_{G ∪ F}) over |F| = min(k, m)
  std::vector<int> best_subset;  // indices into the candidate list
  long evaluated = 0;
};
BruteForceResult brute_force_opt_binary(const WeightedGraph& g, const std::vector<VertexPair>& cand, int k);

struct AscentResult {
  double lambda = 0.0;  // λ₂ at the returned feasible weights, evaluated exactly
  Eigen::VectorXd w;
  int steps = 0;
};
AscentResult weighted_opt_ascent(const WeightedGraph& g, const std::vector<VertexPair>& cand, int k,
                                 int steps = 500, uint64_t seed = 0);

// Euclidean projection onto {0 ≤ w ≤ 1, Σ w ≤ k}.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& y, double k);

// λ₂(L_G + Σ w_e L_e) and a unit eigenvector for it (orthogonal to 1).
double lambda2_weighted(const WeightedGraph& g, const std::vector<VertexPair>& cand, const Eigen::VectorXd& w,
                        Eigen::VectorXd* fiedler = nullptr, uint64_t seed = 0);

// λ_{k+2}(L_G) (1-indexed ascending; λ₁ = 0).
double lambda_k_plus_2(const WeightedGraph& g, int k);

struct PotentialValues {
  double phi_u = 0.0, phi_l = 0.0, rho_upper = 0.0, rho_lower = 0.0;
  Eigen::VectorXd R_upper, R_lower, R;
};

// Full-space recomputation of the barrier potentials and resistances:
// Φ^u = tr[(P_L(uI − A)P_L)^{†q}] with P_L the top-T eigenprojector of A,
// Φ_ℓ = tr[(P_V(B − ℓI)P_V)^{†q}], ρ^u = tr[(uI − A)^{-1} M̄],
// ρ_ℓ = tr[(P_V(B − ℓI)P_V)^†], R_i = v_i^T(uI − A)^{-1}v_i + v_i^T Z (P_V(B − ℓI)P_V)^† Z v_i.
PotentialValues exact_potentials(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double u, double l, double q,
                                 int T, const Eigen::MatrixXd& P_V, const Eigen::MatrixXd& Z,
                                 const Eigen::MatrixXd& Mbar, const Eigen::MatrixXd& vectors);

}  // namespace specaug
