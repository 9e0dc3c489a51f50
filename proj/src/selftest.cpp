#include "specaug/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "specaug/augment.hpp"
#include "specaug/graph.hpp"
#include "specaug/oracles.hpp"
#include "specaug/rng.hpp"
#include "specaug/sdp.hpp"
#include "specaug/sparsifier.hpp"
#include "specaug/spectral.hpp"

namespace specaug {

namespace {

WeightedGraph random_graph(Rng& rng, int n) { return erdos_renyi(n, 0.4, rng.next(), 0.5, 2.0); }

bool laplacian_invariants() {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const WeightedGraph g = random_graph(rng, 4 + t);
    const Eigen::MatrixXd l = laplacian(g);
    if (std::abs(lambda_min_sym(l)) > 1e-9 * std::max(1.0, l.norm())) return false;
    if ((l * Eigen::VectorXd::Ones(g.n())).norm() > 1e-10 * std::max(1.0, l.norm())) return false;
    Eigen::VectorXd x(g.n());
    for (int i = 0; i < g.n(); ++i) x(i) = rng.normal();
    double q = 0.0;
    for (const auto& e : g.edges()) q += e.w * (x(e.u) - x(e.v)) * (x(e.u) - x(e.v));
    if (std::abs(x.dot(l * x) - q) > 1e-10 * std::max(1.0, q)) return false;
  }
  return true;
}

bool oracle_dichotomy() {
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    const WeightedGraph g = random_graph(rng, 5 + static_cast<int>(rng.index(5)));
    auto cand = non_edges(g);
    if (cand.size() > 8) cand.resize(8);
    const SdpInstance inst = make_instance(g, cand, 2, 0.3 + 0.6 * rng.uniform());
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (int i = 0; i < g.n(); ++i)
      for (int j = 0; j < g.n(); ++j) y(i, j) = rng.normal();
    SdpIterate it;
    it.Z = y * y.transpose();
    it.v = rng.uniform();
    it.beta = Eigen::VectorXd::Constant(inst.m(), rng.uniform());
    const double s = it.normalization(inst);
    it.Z /= s;
    it.v /= s;
    it.beta /= s;
    const auto out = oracle(it, inst);
    if (out.fail) {
      if (!verify_dual_feasible(inst, out.certificate.Z, out.certificate.v, out.certificate.beta).ok) return false;
    } else {
      const auto lm = loss_matrix(inst, out.lambda, out.w);
      if (!oracle_width(inst, lm).within(-1.0, 3.0, 1e-8)) return false;
      const double gain = (lm.A.cwiseProduct(it.Z)).sum() + lm.B * it.v + lm.C.dot(it.beta);
      if (gain < -1e-8 || out.lambda < inst.gamma) return false;
    }
  }
  return true;
}

bool sdp_solve_small() {
  const WeightedGraph g = path_graph(5);
  const SdpInstance inst = make_instance(g, non_edges(g), 2, 0.3);
  SolveOptions opt;
  opt.delta_prime = 0.5;
  const auto r = solve_psdp(inst, opt);
  if (r.feasible) {
    const auto lvl = make_instance(g, non_edges(g), 2, r.level);
    return verify_primal_feasible(lvl, r.lambda, r.w).ok;
  }
  return verify_dual_feasible(inst, r.certificate.Z, r.certificate.v, r.certificate.beta).ok;
}

bool spectral_sparsifier_small() {
  const auto inst = setup_spectral_instance(complete_graph(8), 1e-8);
  SparsifyOptions opt;
  opt.seed = 3;
  const auto r = run_sparsifier(inst, opt);
  return r.terminated && r.condition_ratio <= 12 * opt.eps &&
         r.lambda_max_A / r.lambda_min_A <= (1 + 12 * opt.eps) / (1 - 12 * opt.eps);
}

bool subgraph_sparsifier_small() {
  const WeightedGraph g = path_graph(10);
  std::vector<Edge> w;
  for (const auto& [u, v] : non_edges(g)) w.push_back({u, v, 0.5});
  const auto inst = setup_instance(g, w, default_regularization(g, w), 2);
  SparsifyOptions opt;
  opt.seed = 4;
  const auto r = run_sparsifier(inst, opt);
  return r.support <= r.K && r.lambda_min_A >= r.lambda_min_bound - 1e-7 && r.bound_violations.empty();
}

bool lambda_k2_bound() {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const WeightedGraph g = random_graph(rng, 5 + static_cast<int>(rng.index(4)));
    const int k = 1 + static_cast<int>(rng.index(3));
    auto cand = non_edges(g);
    if (cand.size() > 10) cand.resize(10);
    if (lambda_k_plus_2(g, k) < brute_force_opt_binary(g, cand, k).lambda - 1e-9) return false;
  }
  return true;
}

bool augment_reject_triangles() {
  const WeightedGraph g = disjoint_triangles();
  const auto r = augment(g, make_candidates(g, {}), 1, AugmentOptions{});
  return r.status == AugmentStatus::Reject && r.reason == "sdp_infeasible_at_gamma0" && r.certificate_verified;
}

}  // namespace

int run_selftest(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"laplacian invariants", laplacian_invariants},
      {"oracle dichotomy and width", oracle_dichotomy},
      {"sdp solve verified", sdp_solve_small},
      {"spectral sparsifier condition bound", spectral_sparsifier_small},
      {"subgraph sparsifier budgets", subgraph_sparsifier_small},
      {"lambda_{k+2} upper bound", lambda_k2_bound},
      {"augment rejects disconnected base", augment_reject_triangles},
  };
  int failures = 0;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    std::string err;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      err = e.what();
    }
    out << (ok ? "PASS " : "FAIL ") << name << (err.empty() ? "" : " (" + err + ")") << "\n";
    if (!ok) ++failures;
  }
  out << (failures == 0 ? "selftest: all checks passed" : "selftest: failures: " + std::to_string(failures)) << "\n";
  return failures;
}

}  // namespace specaug
