#include "specaug/augment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "specaug/errors.hpp"
#include "specaug/rng.hpp"
#include "specaug/spectral.hpp"

namespace specaug {

const char* status_name(AugmentStatus s) {
  switch (s) {
    case AugmentStatus::Accepted: return "accepted";
    case AugmentStatus::Reject: return "reject";
    case AugmentStatus::RetryExhausted: return "retry_exhausted";
  }
  return "unknown";
}

bool is_connected(const WeightedGraph& h) {
  const int n = h.n();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : h.edges())
    if (e.w > 0.0) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  std::vector<char> seen(n, 0);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = 1;
  int count = 1;
  while (!todo.empty()) {
    const int x = todo.front();
    todo.pop();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        todo.push(y);
      }
  }
  return count == n;
}

double estimate_lambda2(const WeightedGraph& h) {
  if (h.n() <= 1 || !is_connected(h)) return 0.0;
  return std::max(0.0, min_eig_on_complement(laplacian(h)));
}

double estimate_lambda2_iterative(const WeightedGraph& h, uint64_t seed, int iterations) {
  const int n = h.n();
  if (n <= 1 || !is_connected(h)) return 0.0;
  const Eigen::MatrixXd l = laplacian(h);
  // L + 11^T agrees with L on 1^⊥ and is positive definite for connected H.
  Eigen::LLT<Eigen::MatrixXd> llt(l + Eigen::MatrixXd::Ones(n, n));
  if (llt.info() != Eigen::Success) throw NumericalError("estimate_lambda2_iterative: factorization failed");
  Rng rng(seed);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.normal();
  for (int it = 0; it < iterations; ++it) {
    x.array() -= x.mean();
    x.normalize();
    x = llt.solve(x);
  }
  x.array() -= x.mean();
  return x.dot(l * x) / x.squaredNorm();
}

WeightedGraph with_added_edges(const WeightedGraph& g, const std::vector<Edge>& f) {
  std::vector<Edge> e = g.edges();
  e.insert(e.end(), f.begin(), f.end());
  return WeightedGraph(g.n(), e, std::numeric_limits<double>::infinity());
}

AugmentResult augment(const WeightedGraph& g, const CandidateSet& cand, int k, const AugmentOptions& opt) {
  if (!(opt.q >= 10.0)) throw InputError("q must be at least 10");
  if (!(opt.eps > 0.0 && opt.eps <= 0.05 + 1e-12)) throw InputError("eps must lie in (0, 1/20]");
  if (k < 1) throw InputError("k must be at least 1");
  const int n = g.n();
  AugmentResult res;
  res.delta = cand.delta > 0.0 ? cand.delta : 1.0;
  res.gamma0 = std::pow(static_cast<double>(n), -1.0 / opt.q);
  res.reject_threshold = opt.c_reject * res.delta * std::pow(static_cast<double>(n), -2.0 / opt.q);
  res.lambda2_base = estimate_lambda2(g);
  res.support_cap = support_cap(k, opt.eps, opt.q);

  CandidateSet cs = cand;
  cs.delta = res.delta;
  double alpha = 0.0;
  double gamma = res.gamma0;
  std::optional<AugmentResult> stored;

  while (true) {
    gamma = std::min(2.0 * gamma, 1.0);
    GammaAudit row;
    row.gamma = gamma;
    row.threshold = res.reject_threshold;
    const SdpInstance inst{g, cs, k, gamma};
    SolveOptions so;
    so.delta_prime = opt.delta_prime;
    so.use_sketch = opt.use_sketch;
    so.seed = derive_seed(opt.seed, 0x5d9 + res.audit.size());
    const SolveResult sol = solve_psdp(inst, so);
    row.feasible = sol.feasible;
    row.sdp_rounds = sol.rounds;
    res.sdp_rounds += sol.rounds;
    res.last_gamma = gamma;

    if (!sol.feasible) {
      row.outcome = alpha == 0.0 ? "reject" : "return_stored";
      res.audit.push_back(row);
      if (alpha == 0.0) {
        res.status = AugmentStatus::Reject;
        res.reason = "sdp_infeasible_at_gamma0";
        res.certificate = sol.certificate;
        res.certificate_verified =
            verify_dual_feasible(inst, sol.certificate.Z, sol.certificate.v, sol.certificate.beta).ok;
        return res;
      }
      break;
    }
    alpha = gamma;
    row.sdp_lambda = sol.lambda;

    std::vector<Edge> wedges;
    for (int e = 0; e < inst.m(); ++e)
      if (sol.w(e) > opt.support_threshold) wedges.push_back({cs.edges[e].first, cs.edges[e].second, sol.w(e)});
    row.sdp_support = static_cast<int>(wedges.size());

    std::vector<Edge> f;
    double weight_cap = 0.0;
    if (!wedges.empty()) {
      const double reg = default_regularization(g, wedges);
      // The working dimension rank(L_{G+W}) can be small; k must stay below it.
      const auto ev = eig_sym(laplacian(with_added_edges(g, wedges))).values;
      const int r = static_cast<int>((ev.array() > rank_tolerance(ev)).count());
      const int k_eff = std::min(k, r - 1);
      if (k_eff < 1) throw DegenerateInput("working dimension too small to sparsify");
      SparsifyInstance sinst = setup_instance(g, wedges, reg, k_eff);
      SparsifyOptions sopt;
      sopt.eps = opt.eps;
      sopt.q = opt.q;
      sopt.seed = derive_seed(opt.seed, 0xa0 + res.audit.size());
      sopt.backend = opt.backend;
      sopt.retries = opt.retries;
      sopt.check_bounds = false;
      SparsifierResult sr;
      try {
        sr = run_sparsifier(sinst, sopt);
      } catch (const RetryExhausted& e) {
        row.outcome = "retry_exhausted";
        res.audit.push_back(row);
        res.status = AugmentStatus::RetryExhausted;
        res.reason = e.what();
        return res;
      }
      row.sparsifier_attempts = sr.attempts;
      row.sparsifier_iterations = sr.iterations;
      row.sparsifier_samples = sr.samples;
      f = coefficients_to_edges(sinst, sr.c);
      double wsum = 0.0;
      for (const auto& it : sinst.items) wsum += it.w;
      weight_cap = sr.cost_cap * wsum;
    }
    row.F_size = static_cast<int>(f.size());
    const WeightedGraph h = with_added_edges(g, f);
    const double eta2 = estimate_lambda2(h);
    row.lambda2_exact = eta2;
    row.lambda2_estimate = eta2;
    if (eta2 <= res.reject_threshold) {
      row.outcome = "reject";
      res.audit.push_back(row);
      res.status = AugmentStatus::Reject;
      res.reason = "lambda2_below_threshold";
      res.lambda2_estimate = eta2;
      res.lambda2_exact = eta2;
      return res;
    }
    row.outcome = "stored";
    res.audit.push_back(row);

    AugmentResult snap;
    snap.F = f;
    snap.lambda2_estimate = eta2;
    snap.lambda2_exact = eta2;
    snap.gamma_used = gamma;
    snap.weight_cap = weight_cap;
    snap.weight_total = 0.0;
    for (const auto& e : f) snap.weight_total += e.w;
    stored = snap;
    if (gamma >= 1.0) break;
  }

  res.status = AugmentStatus::Accepted;
  res.F = stored->F;
  res.lambda2_estimate = stored->lambda2_estimate;
  res.lambda2_exact = stored->lambda2_exact;
  res.gamma_used = stored->gamma_used;
  res.weight_cap = stored->weight_cap;
  res.weight_total = stored->weight_total;
  return res;
}

}  // namespace specaug
