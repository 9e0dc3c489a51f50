#include "specaug/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specaug/errors.hpp"
#include "specaug/rng.hpp"
#include "specaug/spectral.hpp"

namespace specaug {

void SdpInstance::validate() const {
  if (k < 0) throw InputError("budget k must be nonnegative");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in (0, 1]");
  const double need = std::max(max_degree(base), max_degree(base.n(), cand.edges));
  if (cand.delta < need - 1e-12) throw InputError("delta below the maximum degree");
  if (!(cand.delta > 0.0)) throw InputError("delta must be positive");
}

SdpInstance make_instance(const WeightedGraph& g, const std::vector<VertexPair>& cand, int k,
                          double gamma) {
  SdpInstance inst{g, make_candidates(g, cand), k, gamma};
  if (inst.cand.delta <= 0.0) inst.cand.delta = 1.0;  // edgeless input: any positive bound works
  inst.validate();
  return inst;
}

BlockMatrices assemble_blocks(const SdpInstance& inst) {
  const int n = inst.n(), m = inst.m(), dim = n + 1 + m;
  const double d = inst.delta();
  BlockMatrices b;
  b.E = Eigen::MatrixXd::Zero(dim, dim);
  b.Pi = Eigen::MatrixXd::Zero(dim, dim);
  b.N = Eigen::MatrixXd::Zero(dim, dim);
  const Eigen::MatrixXd p = center_projector(n);
  b.E.topLeftCorner(n, n) = d * Eigen::MatrixXd::Identity(n, n);
  b.Pi.topLeftCorner(n, n) = p;
  b.N.topLeftCorner(n, n) = d * p;
  b.E(n, n) = m;
  b.Pi(n, n) = 1.0;
  b.N(n, n) = m;
  for (int e = 0; e < m; ++e) {
    b.E(n + 1 + e, n + 1 + e) = 1.0;
    b.Pi(n + 1 + e, n + 1 + e) = 1.0;
    b.N(n + 1 + e, n + 1 + e) = 1.0;
  }
  return b;
}

LossMatrix loss_matrix(const SdpInstance& inst, double lambda, const Eigen::VectorXd& w) {
  const int n = inst.n(), m = inst.m();
  if (w.size() != m) throw InputError("loss_matrix: weight vector has wrong length");
  LossMatrix lm;
  lm.A = laplacian(inst.base) - lambda * inst.delta() * center_projector(n);
  for (int e = 0; e < m; ++e)
    add_edge_laplacian(lm.A, inst.cand.edges[e].first, inst.cand.edges[e].second, w(e));
  lm.B = inst.k - w.sum();
  lm.C = Eigen::VectorXd::Ones(m) - w;
  lm.value = lambda;
  return lm;
}

Eigen::MatrixXd LossMatrix::dense() const {
  const int n = static_cast<int>(A.rows()), m = static_cast<int>(C.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1 + m, n + 1 + m);
  d.topLeftCorner(n, n) = A;
  d(n, n) = B;
  for (int e = 0; e < m; ++e) d(n + 1 + e, n + 1 + e) = C(e);
  return d;
}

LossSum LossSum::zero(const SdpInstance& inst) {
  return {Eigen::MatrixXd::Zero(inst.n(), inst.n()), 0.0, Eigen::VectorXd::Zero(inst.m())};
}

void LossSum::add(const LossMatrix& m) {
  A += m.A;
  B += m.B;
  C += m.C;
}

double SdpIterate::normalization(const SdpInstance& inst) const {
  const double zp = Z.trace() - Z.sum() / static_cast<double>(Z.rows());
  return inst.delta() * zp + inst.m() * v + beta.sum();
}

Eigen::MatrixXd SdpIterate::dense() const {
  const int n = static_cast<int>(Z.rows()), m = static_cast<int>(beta.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1 + m, n + 1 + m);
  d.topLeftCorner(n, n) = Z;
  d(n, n) = v;
  for (int e = 0; e < m; ++e) d(n + 1 + e, n + 1 + e) = beta(e);
  return d;
}

namespace {

// Shared exponentiation step of U_ε. Returns the eigendecomposition of the
// A-block exponent and the shifted log-weights so that callers can build
// either Z itself or a square-root factor of it.
struct MwuWeights {
  EigDecomposition eig;
  Eigen::VectorXd za;  // shifted weights of the A-block eigenpairs
  double vb = 0.0;
  Eigen::VectorXd cb;
  double denom = 0.0;
};

MwuWeights mwu_weights(const LossSum& s, double eps, double rho, const SdpInstance& inst) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("mwu_update: eps must lie in (0,1)");
  const int n = inst.n(), m = inst.m();
  const double d = inst.delta(), lb = std::log1p(-eps);
  MwuWeights w;
  // Every loss A-block annihilates 1, and 11^T is invisible to Π, N and the
  // oracle, so the exponential is taken on 1^⊥ only. Keeping the 1-direction
  // would let its zero eigenvalue dominate the shift and underflow the rest.
  const Eigen::MatrixXd q = complement_basis(n);
  const EigDecomposition red = eig_sym(q.transpose() * s.A * q / (2.0 * rho * d));
  w.eig.values = red.values;
  w.eig.vectors = q * red.vectors;
  Eigen::VectorXd la = lb * w.eig.values;
  const double lv = m > 0 ? lb * s.B / (2.0 * rho * m) : -std::numeric_limits<double>::infinity();
  Eigen::VectorXd lc = lb * s.C / (2.0 * rho);
  double shift = la.size() > 0 ? la.maxCoeff() : -std::numeric_limits<double>::infinity();
  if (m > 0) shift = std::max({shift, lv, lc.maxCoeff()});
  if (!std::isfinite(shift)) throw DegenerateInput("mwu_update: empty embedding (n = 1 and m = 0)");
  w.za = (la.array() - shift).exp().matrix();
  w.vb = m > 0 ? std::exp(lv - shift) : 0.0;
  w.cb = (lc.array() - shift).exp().matrix();
  // Π • (1-ε)^{...}: the columns are orthonormal and orthogonal to 1.
  w.denom = w.za.sum() + w.vb + w.cb.sum();
  if (!(w.denom > 0.0) || !std::isfinite(w.denom))
    throw NumericalError("mwu_update: non-positive normalizing denominator");
  return w;
}

}  // namespace

SdpIterate mwu_update(const LossSum& s, double eps, double rho, const SdpInstance& inst) {
  const auto w = mwu_weights(s, eps, rho, inst);
  const int m = inst.m();
  SdpIterate it;
  const Eigen::MatrixXd& u = w.eig.vectors;
  it.Z = u * (w.za / (inst.delta() * w.denom)).asDiagonal() * u.transpose();
  it.v = m > 0 ? w.vb / (m * w.denom) : 0.0;
  it.beta = w.cb / w.denom;
  return it;
}

int default_sketch_dim(int n) {
  const double eps_jl = 1.0 / 64.0;
  return static_cast<int>(std::ceil(12.0 * std::log(n + 1.0) / (eps_jl * eps_jl)));
}

SdpIterate mwu_update_sketched(const LossSum& s, double eps, double rho, const SdpInstance& inst,
                               int sketch_dim, uint64_t seed) {
  const auto w = mwu_weights(s, eps, rho, inst);
  const int n = inst.n(), m = inst.m();
  if (sketch_dim <= 0) sketch_dim = default_sketch_dim(n);
  // Y = U diag(sqrt(za / (Δ denom))), Z = Y Y^T; Z̃ = Y (R R^T) Y^T.
  const Eigen::MatrixXd y =
      w.eig.vectors * (w.za / (inst.delta() * w.denom)).cwiseSqrt().asDiagonal();
  const int r = static_cast<int>(y.cols());
  Eigen::MatrixXd rrt = Eigen::MatrixXd::Zero(r, r);
  {
    Rng rng(seed);
    Eigen::VectorXd col(r);
    for (int c = 0; c < sketch_dim; ++c) {
      for (int i = 0; i < r; ++i) col(i) = rng.rademacher();
      rrt.selfadjointView<Eigen::Lower>().rankUpdate(col, 1.0);
    }
    rrt = rrt.selfadjointView<Eigen::Lower>();
    rrt /= static_cast<double>(sketch_dim);
  }
  SdpIterate it;
  it.Z = y * rrt * y.transpose();
  it.v = m > 0 ? w.vb / (m * w.denom) : 0.0;
  it.beta = w.cb / w.denom;
  const double norm = it.normalization(inst);
  it.Z /= norm;
  it.v /= norm;
  it.beta /= norm;
  return it;
}

namespace {

double dot_laplacian(const WeightedGraph& g, const Eigen::MatrixXd& z) {
  double s = 0.0;
  for (const auto& e : g.edges()) s += e.w * edge_inner(z, e.u, e.v);
  return s;
}

}  // namespace

OracleOutcome oracle(const SdpIterate& it, const SdpInstance& inst) {
  const int m = inst.m();
  const double g = inst.gamma;
  OracleOutcome out;
  Eigen::VectorXd zl(m);
  for (int e = 0; e < m; ++e) zl(e) = edge_inner(it.Z, inst.cand.edges[e].first, inst.cand.edges[e].second);
  double gamma_sum = 0.0;
  std::vector<char> in_b(m, 0);
  for (int e = 0; e < m; ++e) {
    if (it.v + it.beta(e) < zl(e)) {
      in_b[e] = 1;
      gamma_sum += zl(e) - it.v - it.beta(e);
    }
  }
  const double zp = it.Z.trace() - it.Z.sum() / static_cast<double>(inst.n());
  out.T = inst.delta() * zp;
  out.T_tol = dot_laplacian(inst.base, it.Z) + inst.k * it.v + it.beta.sum();
  out.Gamma = gamma_sum;
  if (!(out.T > 0.0) || !std::isfinite(out.T))
    throw DegenerateInput("oracle: Z • ΔP_⊥ is not positive; cannot rescale certificate");

  if (out.Gamma <= out.T * g - out.T_tol) {
    out.fail = true;
    out.certificate.Z = it.Z / out.T;
    out.certificate.v = it.v / out.T;
    out.certificate.beta.resize(m);
    for (int e = 0; e < m; ++e)
      out.certificate.beta(e) = (in_b[e] ? zl(e) - it.v : it.beta(e)) / out.T;
    return out;
  }
  out.lambda = g;
  if (out.T_tol > g * m - g * zl.sum()) {
    out.update_case = 1;
    out.w = Eigen::VectorXd::Constant(m, g);
  } else {
    out.update_case = 2;
    out.w = Eigen::VectorXd::Zero(m);
    for (int e = 0; e < m; ++e)
      if (in_b[e]) out.w(e) = 1.0;
  }
  return out;
}

SolveParams solve_params(const SdpInstance& inst, double delta_prime) {
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) throw InputError("delta' must lie in (0,1)");
  SolveParams p;
  p.delta = delta_prime * inst.gamma / 3.0;
  p.rho = 3.0;
  p.ell = 1.0;
  p.eps = std::min(0.5, p.delta / (2.0 * p.ell));
  const double logn = std::log(std::max(2, inst.n()));
  p.T = static_cast<long>(std::ceil(4.0 * p.rho * logn / (p.delta * p.eps)));
  return p;
}

SolveResult solve_psdp(const SdpInstance& inst, const SolveOptions& opt) {
  inst.validate();
  const int n = inst.n(), m = inst.m();
  SolveResult res;
  res.params = solve_params(inst, opt.delta_prime);
  res.level = (1.0 - opt.delta_prime) * inst.gamma;
  const auto& p = res.params;

  // Fixed part of every loss: L_G − γΔP_⊥ (λ = γ in both update branches).
  const Eigen::MatrixXd fixed_a = laplacian(inst.base) - inst.gamma * inst.delta() * center_projector(n);
  const Eigen::MatrixXd lw = laplacian(n, inst.cand.edges);
  LossSum sum = LossSum::zero(inst);
  Eigen::VectorXd wsum = Eigen::VectorXd::Zero(m);

  for (long t = 1; t <= p.T; ++t) {
    const SdpIterate it =
        opt.use_sketch ? mwu_update_sketched(sum, p.eps, p.rho, inst, opt.sketch_dim, derive_seed(opt.seed, t))
                       : mwu_update(sum, p.eps, p.rho, inst);
    const OracleOutcome out = oracle(it, inst);
    res.rounds = t;
    if (out.fail) {
      res.feasible = false;
      res.certificate = out.certificate;
      return res;
    }
    wsum += out.w;
    sum.A += fixed_a;
    if (out.update_case == 1) {
      sum.A += inst.gamma * lw;
    } else {
      for (int e = 0; e < m; ++e)
        if (out.w(e) > 0.0) add_edge_laplacian(sum.A, inst.cand.edges[e].first, inst.cand.edges[e].second, 1.0);
    }
    sum.B += inst.k - out.w.sum();
    sum.C += Eigen::VectorXd::Ones(m) - out.w;
  }
  res.feasible = true;
  res.lambda = inst.gamma - 3.0 * p.delta;
  res.w = (wsum / static_cast<double>(p.T)).array() - p.delta;
  res.w = res.w.cwiseMax(0.0);
  return res;
}

FeasibilityReport verify_primal_feasible(const SdpInstance& inst, double lambda, const Eigen::VectorXd& w,
                                         double tol) {
  FeasibilityReport r;
  const int m = inst.m();
  if (w.size() != m) return {false, "length", 0.0};
  if (lambda < inst.gamma - tol) return {false, "gamma", lambda - inst.gamma};
  for (int e = 0; e < m; ++e)
    if (w(e) < -tol || w(e) > 1.0 + tol) return {false, "box", w(e)};
  if (w.sum() > inst.k + tol) return {false, "budget", inst.k - w.sum()};
  Eigen::MatrixXd a = laplacian(inst.base) - lambda * inst.delta() * center_projector(inst.n());
  for (int e = 0; e < m; ++e) add_edge_laplacian(a, inst.cand.edges[e].first, inst.cand.edges[e].second, w(e));
  const double me = min_eig_on_complement(a);
  if (me < -tol) return {false, "lmi", me};
  r.slack = me;
  return r;
}

FeasibilityReport verify_dual_feasible(const SdpInstance& inst, const Eigen::MatrixXd& z, double v,
                                       const Eigen::VectorXd& beta, double tol) {
  const int m = inst.m();
  if (beta.size() != m || z.rows() != inst.n()) return {false, "shape", 0.0};
  const double zmin = lambda_min_sym(z);
  if (zmin < -tol) return {false, "psd", zmin};
  const double zp = inst.delta() * (z.trace() - z.sum() / static_cast<double>(inst.n()));
  if (std::abs(zp - 1.0) > tol) return {false, "normalization", zp - 1.0};
  if (v < -tol) return {false, "v", v};
  for (int e = 0; e < m; ++e) {
    if (beta(e) < -tol) return {false, "beta", beta(e)};
    const double zl = edge_inner(z, inst.cand.edges[e].first, inst.cand.edges[e].second);
    if (zl > v + beta(e) + tol) return {false, "edge", v + beta(e) - zl};
  }
  const double obj = dot_laplacian(inst.base, z) + inst.k * v + beta.sum();
  if (!(obj < inst.gamma + tol)) return {false, "objective", inst.gamma - obj};
  return {true, "", inst.gamma - obj};
}

WidthReport oracle_width(const SdpInstance& inst, const LossMatrix& lm) {
  const int n = inst.n(), m = inst.m();
  WidthReport r;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  if (n > 1) {
    // N's A-block is ΔP_⊥; M's A-block annihilates 1, so compare on 1^⊥.
    const Eigen::MatrixXd q = complement_basis(n);
    const auto ev = eig_sym(q.transpose() * lm.A * q / inst.delta()).values;
    lo = std::min(lo, ev.minCoeff());
    hi = std::max(hi, ev.maxCoeff());
  }
  if (m > 0) {
    lo = std::min(lo, lm.B / m);
    hi = std::max(hi, lm.B / m);
    lo = std::min(lo, lm.C.minCoeff());
    hi = std::max(hi, lm.C.maxCoeff());
  }
  r.min_ratio = lo;
  r.max_ratio = hi;
  return r;
}

}  // namespace specaug
