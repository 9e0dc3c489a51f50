#include "specaug/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specaug/approx.hpp"
#include "specaug/errors.hpp"
#include "specaug/rng.hpp"
#include "specaug/spectral.hpp"

namespace specaug {

namespace {

Eigen::MatrixXd sym(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

SparsifyInstance setup_common(int n, const std::vector<Edge>& g_edges, const std::vector<Edge>& w_edges,
                              double reg) {
  if (!(reg > 0.0) || !std::isfinite(reg)) throw InputError("regularization must be positive");
  SparsifyInstance inst;
  inst.n = n;
  inst.reg = reg;
  Eigen::MatrixXd lg = Eigen::MatrixXd::Zero(n, n), lw = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g_edges) add_edge_laplacian(lg, e.u, e.v, e.w);
  for (const auto& e : w_edges) {
    if (!(e.w > 0.0)) throw InputError("candidate weights must be positive");
    if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw InputError("bad candidate edge");
    add_edge_laplacian(lw, e.u, e.v, e.w);
  }

  // Working space: column span of L_{G+W}.
  const auto d = eig_sym(lg + lw);
  const double tol = std::max(rank_tolerance(d.values), 1e-12 * d.values.cwiseAbs().maxCoeff());
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (d.values(i) > tol) keep.push_back(i);
  inst.r = static_cast<int>(keep.size());
  if (inst.r == 0) throw DegenerateInput("G + W has no edges; nothing to sparsify");
  inst.Q.resize(n, inst.r);
  for (int j = 0; j < inst.r; ++j) inst.Q.col(j) = d.vectors.col(keep[j]);

  const int r = inst.r;
  inst.LGr = sym(inst.Q.transpose() * lg * inst.Q);
  inst.LWr = sym(inst.Q.transpose() * lw * inst.Q) + reg * Eigen::MatrixXd::Identity(r, r);
  inst.Lr = inst.LGr + inst.LWr;
  inst.Lr_inv_half = pinv_psd(inst.Lr, 0.5);

  inst.items = w_edges;
  inst.num_edges = static_cast<int>(w_edges.size());
  for (int u = 0; u < n; ++u) inst.items.push_back({u, u, reg});
  const int m = inst.m();
  inst.S.resize(r, m);
  double wsum = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto& e = inst.items[i];
    if (e.u == e.v)
      inst.S.col(i) = std::sqrt(e.w) * inst.Q.row(e.u).transpose();
    else
      inst.S.col(i) = std::sqrt(e.w) * (inst.Q.row(e.u) - inst.Q.row(e.v)).transpose();
    wsum += e.w;
  }
  inst.cost.resize(m);
  for (int i = 0; i < m; ++i) inst.cost(i) = inst.items[i].w / wsum;
  inst.V = inst.Lr_inv_half * inst.S;
  inst.X = sym(inst.Lr_inv_half * inst.LGr * inst.Lr_inv_half);
  inst.Mbar = sym(inst.Lr_inv_half * inst.LWr * inst.Lr_inv_half);
  inst.T = std::max(1, static_cast<int>(std::ceil(inst.Mbar.trace() - 1e-9)));
  return inst;
}

// (uI − A)^{-1/2} eigen-factor: rows are (u − a_i)^{-1/2} u_i^T.
struct UpperFactor {
  Eigen::VectorXd a;
  Eigen::MatrixXd D;  // r × r
};

UpperFactor upper_factor(const Eigen::MatrixXd& A, double u) {
  const auto d = eig_sym(A);
  if (!(u > d.values.maxCoeff()))
    throw BarrierViolation("upper barrier " + std::to_string(u) + " not above λ_max(A) = " +
                           std::to_string(d.values.maxCoeff()));
  const Eigen::VectorXd s = (u - d.values.array()).rsqrt().matrix();
  return {d.values, s.asDiagonal() * d.vectors.transpose()};
}

}  // namespace

double default_regularization(const WeightedGraph& g, const std::vector<Edge>& w_edges) {
  double s = 0.0;
  if (g.m() > 0) {
    for (const auto& e : g.edges()) s += e.w;
    return 1e-8 * s / g.m();
  }
  for (const auto& e : w_edges) s += e.w;
  return w_edges.empty() ? 1e-8 : 1e-8 * s / static_cast<double>(w_edges.size());
}

SparsifyInstance setup_instance(const WeightedGraph& g, const std::vector<Edge>& w_edges, double reg, int k) {
  for (const auto& e : w_edges)
    if (g.has_edge(e.u, e.v)) throw InputError("candidate edge overlaps the base graph");
  SparsifyInstance inst = setup_common(g.n(), g.edges(), w_edges, reg);
  if (k < 1) throw InputError("budget k must be at least 1");
  if (k >= inst.r) throw InputError("k must be smaller than the working dimension");
  inst.k = k;
  inst.Lambda = std::max(inst.k, inst.T);
  return inst;
}

SparsifyInstance setup_spectral_instance(const WeightedGraph& h, double reg) {
  SparsifyInstance inst = setup_common(h.n(), {}, h.edges(), reg);
  inst.spectral_mode = true;
  inst.X.setZero();
  inst.k = inst.r;
  inst.Lambda = std::max(inst.k, inst.T);
  return inst;
}

ProjectionData compute_projection(const SparsifyInstance& inst, ProjectionMode mode, uint64_t seed) {
  const int r = inst.r, k = inst.k;
  if (k < 1 || k > r || (!inst.spectral_mode && k >= r))
    throw InputError("projection rank must satisfy 1 <= k < working dimension");
  ProjectionData p;
  if (inst.spectral_mode) {
    p.V = Eigen::MatrixXd::Identity(r, r);
  } else {
    const auto dx = eig_sym(inst.X);
    p.lambda_star = dx.values(k);
    bool done = false;
    if (mode == ProjectionMode::Approx) {
      p.approx_used = true;
      // Subspace iteration for the top-k eigenvectors of M̄ = I − X.
      const double ls = std::max(p.lambda_star, 1e-12);
      const double eps_proj = ls / (2.0 - ls);
      const int iters = static_cast<int>(std::min(500.0, 20.0 + std::ceil(std::log(r + 1.0) / eps_proj)));
      Rng rng(seed);
      Eigen::MatrixXd y(r, k);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < r; ++i) y(i, j) = rng.normal();
      for (int it = 0; it < iters; ++it) {
        y = inst.Mbar * y;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
        y = qr.householderQ() * Eigen::MatrixXd::Identity(r, k);
      }
      Eigen::HouseholderQR<Eigen::MatrixXd> full(y);
      const Eigen::MatrixXd qf = full.householderQ();
      const Eigen::MatrixXd comp = qf.rightCols(r - k);
      p.complement_min = eig_sym(comp.transpose() * inst.X * comp).values(0);
      if (p.complement_min >= p.lambda_star / 2.0 - 1e-12) {
        p.V = y;
        done = true;
      } else {
        p.fell_back = true;
      }
    }
    if (!done) {
      p.V = dx.vectors.leftCols(k);
      p.complement_min = p.lambda_star;
    }
  }
  p.P = p.V * p.V.transpose();
  const auto dm = eig_sym(p.V.transpose() * inst.Mbar * p.V);
  if (!(dm.values.minCoeff() > 0.0)) throw NumericalError("V^T M̄ V is singular");
  p.Mk_inv_half = spectral_apply(dm, [](double x) { return 1.0 / std::sqrt(x); });
  p.Z = p.V * p.Mk_inv_half * p.V.transpose();
  p.G = p.Mk_inv_half * p.V.transpose() * inst.V;
  p.Vbb = inst.Lr_inv_half * p.V;
  return p;
}

double upper_potential(const Eigen::MatrixXd& A, double u, int T, double q) {
  const auto d = eig_sym(A);
  const int n = static_cast<int>(d.values.size());
  if (!(u > d.values(n - 1))) throw BarrierViolation("upper potential: u not above λ_max(A)");
  double s = 0.0;
  for (int i = std::max(0, n - T); i < n; ++i) s += std::pow(u - d.values(i), -q);
  return s;
}

double lower_potential(const Eigen::MatrixXd& B, double l, double q, const ProjectionData& proj) {
  const auto d = eig_sym(proj.V.transpose() * B * proj.V);
  if (!(d.values(0) > l)) throw BarrierViolation("lower potential: λ_min(B|S') not above ℓ");
  double s = 0.0;
  for (Eigen::Index i = 0; i < d.values.size(); ++i) s += std::pow(d.values(i) - l, -q);
  return s;
}

Eigen::MatrixXd lower_block(const SparsifyInstance& inst, const ProjectionData& proj, const Eigen::MatrixXd& A) {
  return sym(proj.Mk_inv_half * proj.V.transpose() * (A - inst.X) * proj.V * proj.Mk_inv_half);
}

SparsifyState initial_state(const SparsifyInstance& inst) {
  SparsifyState st;
  st.A = inst.X;
  st.u = 2.0 + (inst.spectral_mode ? 0.0 : lambda_max_sym(inst.X));
  st.l = -2.0 * inst.k / static_cast<double>(inst.Lambda);
  st.c = Eigen::VectorXd::Zero(inst.m());
  return st;
}

Resistances relative_resistances(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st) {
  Resistances res;
  const auto uf = upper_factor(st.A, st.u);
  const Eigen::MatrixXd wu = uf.D * inst.V;
  res.upper = wu.colwise().squaredNorm().transpose();
  const auto mu = eig_sym(uf.D * inst.Mbar * uf.D.transpose()).values;
  res.mu_min = mu.minCoeff();
  res.mu_max = mu.maxCoeff();
  res.mu_trace = mu.sum();

  const auto db = eig_sym(lower_block(inst, proj, st.A));
  if (!(db.values(0) > st.l))
    throw BarrierViolation("lower barrier " + std::to_string(st.l) + " not below λ_min(B|S') = " +
                           std::to_string(db.values(0)));
  const Eigen::VectorXd s = (db.values.array() - st.l).rsqrt().matrix();
  const Eigen::MatrixXd wl = s.asDiagonal() * db.vectors.transpose() * proj.G;
  res.lower = wl.colwise().squaredNorm().transpose();
  res.lower_pinv_max = 1.0 / (db.values(0) - st.l);

  res.total = res.upper + res.lower;
  res.rho_upper = res.upper.sum();
  res.rho_lower = res.lower.sum();
  res.rho = res.rho_upper + res.rho_lower;
  return res;
}

SampleCountInfo sample_count(const Resistances& res, double eps, double q) {
  SampleCountInfo info;
  info.base = eps / (4.0 * res.rho) * res.mu_min * res.mu_max / res.mu_trace;
  const double cap = std::min(1.0 / res.mu_max, 1.0 / res.lower_pinv_max);
  info.value = std::pow(info.base, 2.0 * eps / q) * res.rho * cap;
  const double fl = std::floor(info.value);
  info.count = fl < 1.0 ? 1 : static_cast<long>(std::min(fl, 1e12));
  return info;
}

double sample_count_constant(const SparsifyInstance& inst, double eps, double q) {
  const double mmin = lambda_min_sym(inst.Mbar);
  return std::pow(mmin, 2.0 * eps / q) * std::pow(static_cast<double>(inst.n), -2.0 * eps / q) / 16.0;
}

long support_cap(int k, double eps, double q) {
  return static_cast<long>(std::ceil(20.0 * q * k / (3.0 * eps * eps) - 1e-9));
}

int sample_index(const Eigen::VectorXd& cumulative, double uniform01) {
  const Eigen::Index m = cumulative.size();
  const double target = uniform01 * cumulative(m - 1);
  const double* b = cumulative.data();
  const auto it = std::upper_bound(b, b + m, target);
  return static_cast<int>(std::min<Eigen::Index>(it - b, m - 1));
}

namespace {

void check_options(const SparsifyInstance& inst, const SparsifyOptions& opt) {
  if (!(opt.eps > 0.0 && opt.eps <= 0.05 + 1e-12)) throw InputError("eps must lie in (0, 1/20]");
  if (!(opt.q >= 10.0)) throw InputError("q must be at least 10");
  if (inst.k < 1) throw InputError("k must be at least 1");
  if (opt.retries < 1) throw InputError("retry budget must be at least 1");
}

Resistances approx_resistances(const SparsifyInstance& inst, const ProjectionData& proj, const SparsifyState& st,
                               const SparsifyOptions& opt, uint64_t seed) {
  const double eta = default_eta(inst.n, opt.eps, opt.q);
  const auto rep = check_assumption(inst, proj, st, eta);
  if (!rep.ok) throw AssumptionViolated("assumption on barrier margins does not hold");
  Resistances res;
  res.upper = approx_upper_resistances(inst, st, opt.eps_a, eta, derive_seed(seed, 1));
  res.lower = approx_lower_resistances(inst, proj, st, opt.eps_a, derive_seed(seed, 2));
  const auto ex = approx_extreme_eigs(inst, proj, st, opt.eps_a, eta, derive_seed(seed, 3));
  res.total = res.upper + res.lower;
  res.rho_upper = res.upper.sum();
  res.rho_lower = res.lower.sum();
  res.rho = res.rho_upper + res.rho_lower;
  res.mu_max = ex.alpha1;
  res.mu_min = ex.alpha2;
  res.mu_trace = res.rho_upper;
  res.lower_pinv_max = ex.alpha3;
  return res;
}

double closed_form_lambda_min(double theta_min, double theta_max, double lambda_star) {
  if (!(theta_min > 0.0) || !(lambda_star > 0.0)) return 0.0;
  const double h = lambda_star / 2.0;
  const double den = std::sqrt(h) + std::sqrt(theta_min) + std::sqrt(theta_max);
  return theta_min * h / (den * den);
}

}  // namespace

SparsifierResult run_sparsifier_once(const SparsifyInstance& inst, const SparsifyOptions& opt) {
  check_options(inst, opt);
  const double eps = opt.eps, q = opt.q;
  const int m = inst.m();
  SparsifierResult out;
  const ProjectionData proj = compute_projection(inst, opt.projection, derive_seed(opt.seed, 0xB0));
  SparsifyState st = initial_state(inst);
  out.u0 = st.u;
  out.l0 = st.l;
  out.alpha = 4.0 * inst.k / static_cast<double>(inst.Lambda);
  const double target_gap = out.alpha + out.u0 - out.l0;
  out.K = support_cap(inst.k, eps, q);
  out.cost_cap = 3.0 * (1.0 + 3.0 * eps) / (2.0 * q) * static_cast<double>(out.K) / inst.Lambda;
  const double cn = sample_count_constant(inst, eps, q);
  const double round_bound =
      80.0 * q / (3.0 * eps * eps) * std::pow(static_cast<double>(inst.Lambda), (1.0 + 2.0 * eps) / q) / cn;
  out.iteration_cap = opt.max_iterations > 0 ? opt.max_iterations : static_cast<long>(std::ceil(10.0 * round_bound));

  auto violation = [&](const std::string& what) {
    if (out.bound_violations.size() < 50) out.bound_violations.push_back(what);
  };
  const double bound_tol = 1e-9;

  if (opt.check_bounds) {
    const double lmx = inst.spectral_mode ? 0.0 : lambda_max_sym(inst.X);
    const double phi0 = upper_potential(st.A, st.u, inst.T, q) +
                        lower_potential(proj.Z * (st.A - inst.X) * proj.Z, st.l, q, proj);
    const double phi0_bound =
        inst.T * std::pow(out.u0 - lmx, -q) + inst.k * std::pow(inst.Lambda / (2.0 * inst.k), q);
    if (phi0 > phi0_bound * (1 + bound_tol)) violation("initial potential above closed form");
  }

  Rng rng(opt.seed);
  double uhat = st.u, lhat = st.l;
  bool stop = false;
  Eigen::VectorXd cum(m);
  while (st.j < out.iteration_cap) {
    Resistances res;
    if (opt.backend == Backend::Approx) {
      try {
        res = approx_resistances(inst, proj, st, opt, derive_seed(opt.seed, 0x1000 + st.j));
      } catch (const AssumptionViolated&) {
        ++out.approx_fallbacks;
        res = relative_resistances(inst, proj, st);
      }
    } else {
      try {
        res = relative_resistances(inst, proj, st);
      } catch (const BarrierViolation& e) {
        out.failure = std::string("barrier: ") + e.what();
        break;
      }
    }
    const auto nj = sample_count(res, eps, q);

    double phi_u = 0.0, phi_l = 0.0;
    if (opt.check_bounds || static_cast<int>(out.trace.size()) < opt.trace_limit) {
      phi_u = upper_potential(st.A, st.u, inst.T, q);
      phi_l = lower_potential(proj.Z * (st.A - inst.X) * proj.Z, st.l, q, proj);
    }
    if (opt.check_bounds) {
      const double spent = (uhat - lhat) - (out.u0 - out.l0);
      const double lo = (inst.T + inst.k - 1) / (out.u0 - out.l0 + (1.0 + 3.0 * eps) / (6.0 * eps) * spent);
      if (res.rho < lo * (1 - bound_tol)) violation("rho below lower bound at j=" + std::to_string(st.j));
      const double phi = phi_u + phi_l;
      const double hi = std::pow(phi, 1.0 / q) * std::pow(inst.T + inst.k, 1.0 - 1.0 / q);
      if (res.rho > hi * (1 + bound_tol)) violation("rho above potential bound at j=" + std::to_string(st.j));
      const double nlo = cn * std::pow(res.rho, 1.0 - 2.0 * eps / q) * std::pow(phi, -1.0 / q);
      if (nj.value < nlo * (1 - bound_tol)) violation("N_j below lower bound at j=" + std::to_string(st.j));
      if (st.j == 0 && res.rho > (inst.T + inst.Lambda) / 2.0 * (1 + bound_tol)) violation("rho_0 above (T+Λ)/2");
    }

    std::partial_sum(res.total.data(), res.total.data() + m, cum.data());
    const double du = (1.0 + 3.0 * eps) * eps / (q * res.rho);
    const double dl = (1.0 - 3.0 * eps) * eps / (q * res.rho);
    Eigen::VectorXd add = Eigen::VectorXd::Zero(m);
    for (long s = 0; s < nj.count; ++s) {
      const int i = sample_index(cum, rng.uniform());
      add(i) += eps / (q * res.total(i));
      uhat += du;
      lhat += dl;
      ++out.samples;
      if (uhat - lhat > target_gap) {
        stop = true;
        break;
      }
    }
    for (int i = 0; i < m; ++i)
      if (add(i) > 0.0) st.A.selfadjointView<Eigen::Lower>().rankUpdate(inst.V.col(i), add(i));
    st.A = st.A.selfadjointView<Eigen::Lower>();
    st.c += add;
    st.u = uhat;
    st.l = lhat;
    ++st.j;

    if (static_cast<int>(out.trace.size()) < opt.trace_limit)
      out.trace.push_back({st.j - 1, uhat, lhat, res.rho, phi_u, phi_l, nj.count, out.samples});

    const double amax = lambda_max_sym(st.A);
    const double bmin = lambda_min_sym(lower_block(inst, proj, st.A));
    if (!(amax < uhat) || !(bmin > lhat)) {
      out.failure = "barrier crossed after iteration " + std::to_string(st.j);
      break;
    }
    if (stop) {
      out.terminated = true;
      break;
    }
    if (opt.stop_after > 0 && st.j >= opt.stop_after) {
      out.failure = "stopped early";
      break;
    }
  }
  if (!out.terminated && out.failure.empty()) out.failure = "iteration cap reached";

  out.iterations = st.j;
  out.u_final = st.u;
  out.l_final = st.l;
  out.c = st.c;
  const auto da = eig_sym(st.A).values;
  out.lambda_min_A = da.minCoeff();
  out.lambda_max_A = da.maxCoeff();
  out.lambda_min_Bk = lambda_min_sym(lower_block(inst, proj, st.A));
  out.lambda_min_bound = inst.spectral_mode ? 0.0 : closed_form_lambda_min(st.l, st.u, proj.lambda_star);
  out.support = 0;
  for (int i = 0; i < inst.num_edges; ++i)
    if (st.c(i) > 0.0) ++out.support;
  out.cost_sum = st.c.dot(inst.cost);
  out.condition_ratio = (st.u - st.l) / st.u;
  out.state = std::move(st);

  out.accepted = out.terminated && out.support <= out.K && out.lambda_min_A >= out.lambda_min_bound - 1e-7 &&
                 out.cost_sum <= out.cost_cap + 1e-9;
  if (inst.spectral_mode) out.accepted = out.accepted && out.condition_ratio <= 12.0 * eps;
  if (out.terminated && !out.accepted) out.failure = "output checks failed";
  return out;
}

SparsifierResult run_sparsifier(const SparsifyInstance& inst, const SparsifyOptions& opt) {
  check_options(inst, opt);
  std::string reasons;
  for (int a = 0; a < opt.retries; ++a) {
    SparsifyOptions o = opt;
    o.seed = derive_seed(opt.seed, static_cast<uint64_t>(a));
    SparsifierResult r = run_sparsifier_once(inst, o);
    r.attempts = a + 1;
    if (r.accepted) return r;
    reasons += (reasons.empty() ? "" : "; ") + r.failure;
  }
  throw RetryExhausted("sparsifier failed in all " + std::to_string(opt.retries) + " attempts: " + reasons);
}

double RankOneReport::min_slack() const {
  return std::min({slack_phi_u, slack_phi_l, slack_rho_u, slack_rho_l});
}

RankOneReport rank_one_check(const SparsifyInstance& inst, const ProjectionData& proj, const Eigen::MatrixXd& A,
                             double u_hat, double l_hat, const Eigen::VectorXd& w, double eps, double q) {
  RankOneReport rep;
  // Upper side, full space.
  const auto da = eig_sym(A);
  if (!(u_hat > da.values.maxCoeff())) throw BarrierViolation("rank_one_check: û not above λ_max(A)");
  auto ypow = [&](double p) {
    return spectral_apply(da, [&](double x) { return std::pow(u_hat - x, -p); });
  };
  const Eigen::MatrixXd yinv = ypow(1.0);
  const double pre_u = w.dot(yinv * w);
  // Lower side, inside span V: g = V^T Z w.
  const Eigen::VectorXd g = proj.Mk_inv_half * proj.V.transpose() * w;
  const Eigen::MatrixXd bk = lower_block(inst, proj, A);
  const auto db = eig_sym(bk);
  if (!(db.values(0) > l_hat)) throw BarrierViolation("rank_one_check: ℓ̂ not below λ_min(B|S')");
  auto bpow = [&](const EigDecomposition& d, double p) {
    return spectral_apply(d, [&](double x) { return std::pow(x - l_hat, -p); });
  };
  const double pre_l = g.dot(bpow(db, 1.0) * g);
  rep.preconditions = pre_u <= 2.0 * eps / q && pre_l <= 2.0 * eps / q;

  const Eigen::MatrixXd a2 = A + w * w.transpose();
  const double phu0 = upper_potential(A, u_hat, inst.T, q);
  const double phu1 = upper_potential(a2, u_hat, inst.T, q);
  const double phu_rhs = phu0 + q * (1.0 + 2.0 * eps) * w.dot(ypow(q + 1.0) * w);
  rep.slack_phi_u = (phu_rhs - phu1) / std::max(1.0, std::abs(phu0));

  const Eigen::MatrixXd bk2 = bk + g * g.transpose();
  const auto db2 = eig_sym(bk2);
  auto trace_pow = [&](const Eigen::VectorXd& ev, double p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) s += std::pow(ev(i) - l_hat, -p);
    return s;
  };
  const double phl0 = trace_pow(db.values, q), phl1 = trace_pow(db2.values, q);
  const double phl_rhs = phl0 - q * (1.0 - 2.0 * eps) * g.dot(bpow(db, q + 1.0) * g);
  rep.slack_phi_l = (phl_rhs - phl1) / std::max(1.0, std::abs(phl0));

  const double rhu0 = (yinv * inst.Mbar).trace();
  const auto da2 = eig_sym(a2);
  const double rhu1 =
      (spectral_apply(da2, [&](double x) { return 1.0 / (u_hat - x); }) * inst.Mbar).trace();
  const double rhu_rhs = rhu0 + w.dot(yinv * inst.Mbar * yinv * w) / (1.0 - 2.0 * eps / q);
  rep.slack_rho_u = (rhu_rhs - rhu1) / std::max(1.0, std::abs(rhu0));

  const double rhl0 = trace_pow(db.values, 1.0), rhl1 = trace_pow(db2.values, 1.0);
  const double rhl_rhs = rhl0 - g.dot(bpow(db, 2.0) * g) / (1.0 + 2.0 * eps / q);
  rep.slack_rho_l = (rhl_rhs - rhl1) / std::max(1.0, std::abs(rhl0));
  return rep;
}

std::vector<Edge> coefficients_to_edges(const SparsifyInstance& inst, const Eigen::VectorXd& c) {
  std::vector<Edge> out;
  for (int i = 0; i < inst.num_edges; ++i)
    if (c(i) > 0.0) out.push_back({inst.items[i].u, inst.items[i].v, c(i) * inst.items[i].w});
  return out;
}

}  // namespace specaug
