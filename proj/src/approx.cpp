#include "specaug/approx.hpp"

#include <algorithm>
#include <cmath>

#include "specaug/errors.hpp"
#include "specaug/spectral.hpp"

namespace specaug {

namespace {

int jl_dim(int count, double eps_a) {
  return static_cast<int>(std::ceil(8.0 * std::log(count + 1.0) / (eps_a * eps_a)));
}

// L̃ − ℓ L_W seen through 𝕍, factored as J^{1/2} = 𝕍 F Λ^{-1/2}.
Eigen::MatrixXd lower_half_factor(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st) {
  const Eigen::MatrixXd lt = inst.S * st.c.asDiagonal() * inst.S.transpose();
  const Eigen::MatrixXd kmat = proj.Vbb.transpose() * (lt - st.l * inst.LWr) * proj.Vbb;
  const auto d = eig_sym(kmat);
  if (!(d.values.minCoeff() > 0.0))
    throw AssumptionViolated("lower frame is not positive definite; ℓ is not below the spectrum");
  return proj.Vbb * d.vectors * d.values.array().rsqrt().matrix().asDiagonal();
}

}  // namespace

double default_eta(int n, double eps, double q) {
  return std::pow(eps, 2.0 + 2.0 / q) * std::pow(static_cast<double>(std::max(n, 1)), -2.0 / q);
}

AssumptionReport check_assumption(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st,
                                  double eta) {
  AssumptionReport r;
  r.upper_margin = (1.0 - eta) * st.u - lambda_max_sym(st.A);
  r.lower_margin = lambda_min_sym(lower_block(inst, proj, st.A)) - st.l - std::abs(st.l) * eta;
  r.ok = r.upper_margin >= 0.0 && r.lower_margin >= 0.0;
  return r;
}

Eigen::VectorXd approx_lower_resistances(const SparsifyInstance& inst, const ProjectionData& proj,
                                         const SparsifyState& st, double eps_a, uint64_t seed, bool force_jl) {
  const Eigen::MatrixXd jh = lower_half_factor(inst, proj, st);
  const int k = static_cast<int>(jh.cols());
  const bool use_jl = force_jl || k >= std::log(static_cast<double>(std::max(inst.n, 2))) / (eps_a * eps_a);
  if (!use_jl) return (jh.transpose() * inst.S).colwise().squaredNorm().transpose();
  const Eigen::MatrixXd proj_cols = jl_sketch(jh, jl_dim(inst.m(), eps_a), seed);
  return (proj_cols.transpose() * inst.S).colwise().squaredNorm().transpose();
}

int chebyshev_degree(double eta, double eps_a) {
  if (!(eta > 0.0 && eta < 1.0)) throw InputError("chebyshev_degree: eta must lie in (0,1)");
  // Singularity of (u − x)^{-1/2} sits at t0 = (1+η)/(1−η) after mapping the
  // interval to [−1, 1]; coefficients decay like ρ^{-d}, ρ = t0 + √(t0² − 1) ≈ 1 + 2√η.
  const double t0 = (1.0 + eta) / (1.0 - eta);
  const double rho = t0 + std::sqrt(t0 * t0 - 1.0);
  return static_cast<int>(std::ceil(2.0 * std::log(40.0 / (eps_a * eta)) / std::log(rho)));
}

Eigen::MatrixXd chebyshev_inv_sqrt_apply(const Eigen::MatrixXd& A, double u, double eta, double eps_a,
                                         const Eigen::MatrixXd& block) {
  const int d = chebyshev_degree(eta, eps_a);
  const double a = 0.0, b = (1.0 - eta) * u;
  const int nodes = d + 1;
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(nodes);
  for (int j = 0; j < nodes; ++j) {
    const double th = M_PI * (j + 0.5) / nodes;
    const double x = 0.5 * (b - a) * std::cos(th) + 0.5 * (b + a);
    const double fx = 1.0 / std::sqrt(u - x);
    for (int kk = 0; kk < nodes; ++kk) coef(kk) += fx * std::cos(kk * th);
  }
  coef *= 2.0 / nodes;
  const int r = static_cast<int>(A.rows());
  const Eigen::MatrixXd ah = (2.0 * A - (a + b) * Eigen::MatrixXd::Identity(r, r)) / (b - a);
  // Clenshaw on whichever operand is cheaper.
  const bool on_identity = r < block.cols();
  const Eigen::MatrixXd x0 = on_identity ? Eigen::MatrixXd::Identity(r, r) : block;
  Eigen::MatrixXd b1 = Eigen::MatrixXd::Zero(x0.rows(), x0.cols()), b2 = b1;
  for (int kk = d; kk >= 1; --kk) {
    Eigen::MatrixXd bk = 2.0 * (ah * b1) - b2 + coef(kk) * x0;
    b2 = std::move(b1);
    b1 = std::move(bk);
  }
  Eigen::MatrixXd res = ah * b1 - b2 + 0.5 * coef(0) * x0;
  return on_identity ? Eigen::MatrixXd(res * block) : res;
}

Eigen::VectorXd approx_upper_resistances(const SparsifyInstance& inst, const SparsifyState& st, double eps_a,
                                         double eta, uint64_t seed) {
  if (lambda_max_sym(st.A) > (1.0 - eta) * st.u)
    throw AssumptionViolated("λ_max(A) exceeds (1 − η)u");
  const Eigen::MatrixXd y = chebyshev_inv_sqrt_apply(st.A, st.u, eta, eps_a, inst.V);
  const int d = jl_dim(inst.m(), eps_a);
  if (d >= inst.r) return y.colwise().squaredNorm().transpose();
  const Eigen::MatrixXd sk = jl_sketch(y.transpose(), d, seed);
  return sk.rowwise().squaredNorm();
}

int trace_power_t(int dim, double eps_a) {
  const double need = std::log(static_cast<double>(std::max(dim, 2))) / std::log1p(eps_a / 2.0);
  return std::max(1, static_cast<int>(std::ceil((need - 1.0) / 2.0)));
}

double trace_power_lambda_max(const Eigen::MatrixXd& M, int power, uint64_t seed, int sketch_dim) {
  if (power < 1) throw InputError("trace_power_lambda_max: power must be positive");
  const int r = static_cast<int>(M.rows());
  const double s = M.trace();
  if (!(s > 0.0)) return 0.0;
  const Eigen::MatrixXd mh = M / s;
  // G = R · M̂^{⌊p/2⌋}, tracked in log scale.
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(r, r);
  double logscale = 0.0;
  for (int h = 0; h < power / 2; ++h) {
    p = p * mh;
    const double nrm = p.norm();
    p /= nrm;
    logscale += std::log(nrm);
  }
  const Eigen::MatrixXd g = sketch_dim > 0 ? Eigen::MatrixXd(jl_sketch(p.transpose(), sketch_dim, seed).transpose())
                                           : p;
  const double tr = (power % 2 == 1) ? (g * mh * g.transpose()).trace() : g.squaredNorm();
  if (!(tr > 0.0)) return 0.0;
  return s * std::exp((std::log(tr) + 2.0 * logscale) / power);
}

ExtremeEigs approx_extreme_eigs(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st,
                                double eps_a, double eta, uint64_t seed, bool force_jl) {
  ExtremeEigs e;
  const int r = inst.r;
  e.t = trace_power_t(r, eps_a);
  const int sk = force_jl ? jl_dim(r, eps_a) : (jl_dim(r, eps_a) < r ? jl_dim(r, eps_a) : 0);

  // α1: λ_max(S_u M̄ S_u).
  const Eigen::MatrixXd su = chebyshev_inv_sqrt_apply(st.A, st.u, eta, eps_a, Eigen::MatrixXd::Identity(r, r));
  const Eigen::MatrixXd m1 = su.transpose() * inst.Mbar * su;
  e.alpha1 = trace_power_lambda_max(0.5 * (m1 + m1.transpose()), 2 * e.t + 1, seed ^ 0x11, sk);

  // α2: 1 / λ_max(C^{-1}(u L − L_A)C^{-T}) with L_W = C C^T.
  Eigen::LLT<Eigen::MatrixXd> llt(inst.LWr);
  if (llt.info() != Eigen::Success) throw NumericalError("L_W is not positive definite");
  const Eigen::MatrixXd la = inst.LGr + inst.S * st.c.asDiagonal() * inst.S.transpose();
  Eigen::MatrixXd m2 = st.u * inst.Lr - la;
  m2 = llt.matrixL().solve(m2);
  m2 = llt.matrixL().solve(m2.transpose().eval());
  const double a2 = trace_power_lambda_max(0.5 * (m2 + m2.transpose()), 2 * e.t + 1, seed ^ 0x22, sk);
  e.alpha2 = a2 > 0.0 ? 1.0 / a2 : 0.0;

  // α3: λ_max(J L_W) = λ_max(C^T J C), J = J^{1/2} J^{T/2}.
  const Eigen::MatrixXd jh = lower_half_factor(inst, proj, st);
  const Eigen::MatrixXd cj = Eigen::MatrixXd(llt.matrixL()).transpose() * jh;
  e.alpha3 = trace_power_lambda_max(cj * cj.transpose(), 2 * e.t, seed ^ 0x33, sk);
  return e;
}

}  // namespace specaug
