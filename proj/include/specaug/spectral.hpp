#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

namespace specaug {

struct EigDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

// Full symmetric eigendecomposition; the input is symmetrized first.
EigDecomposition eig_sym(const Eigen::MatrixXd& a);

// τ_rank = n · ε_machine · max |λ|, shared by every pseudoinverse consumer.
double rank_tolerance(const Eigen::VectorXd& values);

// V f(Λ) V^T.
Eigen::MatrixXd spectral_apply(const EigDecomposition& d, const std::function<double(double)>& f);

// A^{† p}: eigenvalues below τ_rank are zeroed, the rest raised to -p.
Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& a, double power = 1.0);

// base^A = exp(ln(base) A).
Eigen::MatrixXd base_power_psd(const Eigen::MatrixXd& a, double base);

// min x^T A x / x^T x over x ⊥ 1; λ₂ for Laplacians. Returns 0 for n = 1.
double min_eig_on_complement(const Eigen::MatrixXd& a);

// n × (n-1) orthonormal basis of the complement of the all-ones vector.
Eigen::MatrixXd complement_basis(int n);

// rows · R with R a (cols × d) Rademacher matrix scaled by 1/√d. With
// `identity` set (and d == cols) the projection is the identity.
Eigen::MatrixXd jl_sketch(const Eigen::MatrixXd& rows, int target_dim, uint64_t seed,
                          bool identity = false);

Eigen::MatrixXd rademacher_matrix(int rows, int cols, uint64_t seed);

double lambda_max_sym(const Eigen::MatrixXd& a);
double lambda_min_sym(const Eigen::MatrixXd& a);

}  // namespace specaug
