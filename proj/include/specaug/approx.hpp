#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "specaug/sparsifier.hpp"

namespace specaug {

// Fast-path estimators for the sparsifier quantities. They work from the
// Laplacian-side matrices (Lr, LWr, the s_i) rather than from the whitened
// X / M̄ / v_i used by the exact backend. Linear solves are dense here.

// η = ε^{2+2/q} · n^{-2/q}.
double default_eta(int n, double eps, double q);

struct AssumptionReport {
  bool ok = false;
  double upper_margin = 0.0;  // (1 − η)u − λ_max(A)
  double lower_margin = 0.0;  // λ_min(Bk − ℓI) − |ℓ|η
};
// A ⪯ (1 − η)u I and P_V(A − X − ℓM̄)P_V ⪰ |ℓ|η P_V M̄ P_V.
AssumptionReport check_assumption(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st,
                                  double eta);

// Lower-barrier resistances via the k × k eigendecomposition of
// 𝕍^T(L̃ − ℓ L_W)𝕍, JL-compressed when k ≥ ln(n)/ε_a² (or when forced).
Eigen::VectorXd approx_lower_resistances(const SparsifyInstance& inst, const ProjectionData& proj,
                                         const SparsifyState& st, double eps_a, uint64_t seed,
                                         bool force_jl = false);

// Degree of the Chebyshev approximant of (u − x)^{-1/2} on [0, (1 − η)u].
int chebyshev_degree(double eta, double eps_a);

// S_u ≈ (uI − A)^{-1/2} by Chebyshev/Clenshaw, applied to the given block.
Eigen::MatrixXd chebyshev_inv_sqrt_apply(const Eigen::MatrixXd& A, double u, double eta, double eps_a,
                                         const Eigen::MatrixXd& block);

// r_i ≈ ‖S_u v_i‖².
Eigen::VectorXd approx_upper_resistances(const SparsifyInstance& inst, const SparsifyState& st, double eps_a,
                                         double eta, uint64_t seed);

struct ExtremeEigs {
  double alpha1 = 0.0;  // ≈ λ_max((uI − A)^{-1} M̄)
  double alpha2 = 0.0;  // ≈ λ_min((uI − A)^{-1} M̄)
  double alpha3 = 0.0;  // ≈ λ_max((P_V(B − ℓI)P_V)^†)
  int t = 0;
};
ExtremeEigs approx_extreme_eigs(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st,
                                double eps_a, double eta, uint64_t seed, bool force_jl = false);

// Trace-power estimate of λ_max for a PSD matrix: (tr M^{p})^{1/p}, p = 2t+1
// (odd) or 2t (even), with an optional Rademacher sketch on the left.
double trace_power_lambda_max(const Eigen::MatrixXd& M, int power, uint64_t seed, int sketch_dim);
int trace_power_t(int dim, double eps_a);

}  // namespace specaug
