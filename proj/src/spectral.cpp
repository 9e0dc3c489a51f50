#include "specaug/spectral.hpp"

#include <cmath>
#include <limits>

#include "specaug/errors.hpp"
#include "specaug/rng.hpp"

namespace specaug {

EigDecomposition eig_sym(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InputError("eig_sym: matrix is not square");
  if (!a.allFinite()) throw InputError("eig_sym: non-finite entries");
  const Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw NumericalError("eig_sym: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double rank_tolerance(const Eigen::VectorXd& values) {
  if (values.size() == 0) return 0.0;
  return static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon() *
         values.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd spectral_apply(const EigDecomposition& d, const std::function<double(double)>& f) {
  Eigen::VectorXd fv(d.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(d.values(i));
  return d.vectors * fv.asDiagonal() * d.vectors.transpose();
}

Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& a, double power) {
  const auto d = eig_sym(a);
  if (d.values.size() == 0) return a;
  const double lmax = d.values.cwiseAbs().maxCoeff();
  if (d.values(0) < -1e-8 * lmax) throw NumericalError("pinv_psd: matrix is not PSD");
  const double tol = rank_tolerance(d.values);
  return spectral_apply(d, [&](double x) { return x > tol ? std::pow(x, -power) : 0.0; });
}

Eigen::MatrixXd base_power_psd(const Eigen::MatrixXd& a, double base) {
  if (!(base > 0.0 && base < 1.0)) throw InputError("base_power_psd: base must lie in (0,1)");
  const double lb = std::log(base);
  return spectral_apply(eig_sym(a), [&](double x) { return std::exp(lb * x); });
}

Eigen::MatrixXd complement_basis(int n) {
  if (n <= 1) return Eigen::MatrixXd::Zero(std::max(n, 0), 0);
  // Householder reflector mapping e_1 to 1/√n; its other columns span 1^⊥.
  Eigen::VectorXd h = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  h(0) -= 1.0;
  Eigen::MatrixXd hh = Eigen::MatrixXd::Identity(n, n) - 2.0 * h * h.transpose() / h.squaredNorm();
  return hh.rightCols(n - 1);
}

double min_eig_on_complement(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n <= 1) return 0.0;
  const Eigen::MatrixXd q = complement_basis(n);
  return eig_sym(q.transpose() * a * q).values(0);
}

Eigen::MatrixXd rademacher_matrix(int rows, int cols, uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd r(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) r(i, j) = rng.rademacher();
  return r;
}

Eigen::MatrixXd jl_sketch(const Eigen::MatrixXd& rows, int target_dim, uint64_t seed, bool identity) {
  if (target_dim < 1) throw InputError("jl_sketch: target_dim must be positive");
  if (identity) {
    if (target_dim != rows.cols()) throw InputError("jl_sketch: identity mode needs d = input dim");
    return rows;
  }
  const Eigen::MatrixXd r = rademacher_matrix(static_cast<int>(rows.cols()), target_dim, seed);
  return rows * r / std::sqrt(static_cast<double>(target_dim));
}

double lambda_max_sym(const Eigen::MatrixXd& a) { return eig_sym(a).values.maxCoeff(); }
double lambda_min_sym(const Eigen::MatrixXd& a) { return eig_sym(a).values.minCoeff(); }

}  // namespace specaug
