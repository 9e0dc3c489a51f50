// Acceptance driver: one PASS/FAIL line per criterion.
//   acceptance                 run all nine
//   acceptance --criterion N   run one (used by ctest)

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "specaug/approx.hpp"
#include "specaug/augment.hpp"
#include "specaug/errors.hpp"
#include "specaug/oracles.hpp"
#include "specaug/rng.hpp"
#include "specaug/sdp.hpp"
#include "specaug/sparsifier.hpp"
#include "specaug/spectral.hpp"
#include "support/fixtures.hpp"

using namespace specaug;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 1. Infeasible ⇒ certificate verifies; feasible ⇒ rounded primal verifies at (1 − δ′)γ.
Outcome sdp_dichotomy() {
  const std::vector<double> grid = {0.1, 0.2, 0.35, 0.5, 0.75, 1.0};
  int feasible = 0, infeasible = 0, bad = 0;
  std::string first_bad;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const SdpInstance base = fixtures::random_sdp_instance(derive_seed(1, seed), 4, 12, 15, 3);
    for (double gamma : grid) {
      const SdpInstance inst{base.base, base.cand, base.k, gamma};
      SolveOptions opt;
      opt.delta_prime = 0.5;
      opt.seed = seed;
      const auto r = solve_psdp(inst, opt);
      FeasibilityReport rep;
      if (r.feasible) {
        ++feasible;
        const SdpInstance lvl{inst.base, inst.cand, inst.k, r.level};
        rep = verify_primal_feasible(lvl, r.lambda, r.w, 1e-6);
      } else {
        ++infeasible;
        rep = verify_dual_feasible(inst, r.certificate.Z, r.certificate.v, r.certificate.beta, 1e-6);
      }
      if (!rep.ok) {
        ++bad;
        if (first_bad.empty())
          first_bad = " first: seed " + std::to_string(seed) + " gamma " + std::to_string(gamma) + " " + rep.reason;
      }
    }
  }
  std::ostringstream s;
  s << "300 solves: feasible=" << feasible << " infeasible=" << infeasible << " unverified=" << bad << first_bad;
  return {bad == 0, s.str()};
}

// 2. Width and gain of every Update output.
Outcome oracle_width_check() {
  int updates = 0, fails = 0, bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const SdpInstance base = fixtures::random_sdp_instance(derive_seed(2, seed));
    Rng rng(derive_seed(3, seed));
    const SdpInstance inst{base.base, base.cand, base.k, 0.05 + 0.95 * rng.uniform()};
    const SdpIterate it = fixtures::random_normalized_iterate(inst, derive_seed(4, seed));
    const auto out = oracle(it, inst);
    if (out.fail) {
      ++fails;
      continue;
    }
    ++updates;
    const auto lm = loss_matrix(inst, out.lambda, out.w);
    const auto wr = oracle_width(inst, lm);
    const double gain = lm.A.cwiseProduct(it.Z).sum() + lm.B * it.v + lm.C.dot(it.beta);
    worst = std::min({worst, wr.min_ratio + 1.0, 3.0 - wr.max_ratio, gain});
    if (!wr.within(-1.0, 3.0, 1e-8) || gain < -1e-8 || out.lambda < inst.gamma) ++bad;
  }
  std::ostringstream s;
  s << "200 iterates: updates=" << updates << " fails=" << fails << " violations=" << bad
    << " min slack=" << worst;
  return {bad == 0, s.str()};
}

// 3. X = 0 specialization.
Outcome spectral_specialization() {
  struct Family {
    std::string name;
    WeightedGraph g;
  };
  const std::vector<Family> fams = {{"K20", complete_graph(20)},
                                    {"G(30,0.3)", erdos_renyi(30, 0.3, 17)},
                                    {"barbell(12,12)", barbell_graph(12, 12)}};
  bool pass = true;
  std::ostringstream s;
  for (const auto& f : fams) {
    const auto inst = setup_spectral_instance(f.g, default_regularization(f.g, {}));
    int terminated = 0, bad = 0;
    double worst_cond = 0.0, worst_ratio = 0.0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
      SparsifyOptions opt;
      opt.seed = derive_seed(5, seed);
      opt.check_bounds = false;
      const auto r = run_sparsifier_once(inst, opt);
      if (!r.terminated) continue;
      ++terminated;
      const double ratio = r.lambda_max_A / r.lambda_min_A;
      worst_cond = std::max(worst_cond, r.condition_ratio);
      worst_ratio = std::max(worst_ratio, ratio);
      if (r.condition_ratio > 12 * opt.eps || ratio > (1 + 12 * opt.eps) / (1 - 12 * opt.eps) * (1 + 1e-6)) ++bad;
    }
    if (terminated < 15 || bad > 0) pass = false;
    s << f.name << ": terminated=" << terminated << "/20 bad=" << bad << " max (u-l)/u=" << worst_cond
      << " max cond=" << worst_ratio << "; ";
  }
  s << "cond bound=" << (1 + 12 * 0.05) / (1 - 12 * 0.05);
  return {pass, s.str()};
}

// 4. Subgraph sparsifier budgets and quality.
Outcome subgraph_budgets() {
  int accepted = 0, support_bad = 0, bound_bad = 0, cost_ok = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const auto c = fixtures::random_subgraph_case(derive_seed(6, seed), 8, 25, 2, 4);
    const auto inst = setup_instance(c.g, c.w, default_regularization(c.g, c.w), c.k);
    SparsifyOptions opt;
    opt.seed = derive_seed(7, seed);
    opt.check_bounds = false;
    const auto r = run_sparsifier_once(inst, opt);
    if (r.cost_sum <= r.cost_cap + 1e-9) ++cost_ok;
    if (!r.accepted) continue;
    ++accepted;
    if (r.support > support_cap(inst.k, opt.eps, opt.q)) ++support_bad;
    if (r.lambda_min_A < r.lambda_min_bound - 1e-7) ++bound_bad;
  }
  std::ostringstream s;
  s << "30 runs: accepted=" << accepted << " support over cap=" << support_bad << " cost within cap=" << cost_ok
    << "/30 lambda_min below bound=" << bound_bad;
  return {support_bad == 0 && bound_bad == 0 && cost_ok >= 22, s.str()};
}

// 5. Rank-one step inequalities at random valid states.
Outcome rank_one() {
  int states = 0, checked = 0, bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (uint64_t seed = 0; states < 100; ++seed) {
    const auto c = fixtures::random_subgraph_case(derive_seed(8, seed), 8, 14);
    const auto inst = setup_instance(c.g, c.w, default_regularization(c.g, c.w), c.k);
    SparsifyOptions opt;
    opt.seed = derive_seed(9, seed);
    opt.stop_after = 1 + static_cast<long>(seed % 8);
    opt.check_bounds = false;
    const auto run = run_sparsifier_once(inst, opt);
    const auto p = compute_projection(inst, ProjectionMode::Exact, 0);
    const auto& st = run.state;
    Resistances res;
    try {
      res = relative_resistances(inst, p, st);
    } catch (const BarrierViolation&) {
      continue;
    }
    ++states;
    const double eps = opt.eps, q = opt.q;
    const double uh = st.u + (1 + 3 * eps) * eps / (q * res.rho);
    const double lh = st.l + (1 - 3 * eps) * eps / (q * res.rho);
    Rng rng(derive_seed(10, seed));
    const int i = static_cast<int>(rng.index(inst.m()));
    const Eigen::VectorXd w = std::sqrt(eps / (q * res.total(i))) * inst.V.col(i);
    const auto rep = rank_one_check(inst, p, st.A, uh, lh, w, eps, q);
    if (!rep.preconditions) continue;
    ++checked;
    worst = std::min(worst, rep.min_slack());
    if (rep.min_slack() < -1e-8) ++bad;
  }
  std::ostringstream s;
  s << "100 states: preconditions held=" << checked << " violations=" << bad << " min slack=" << worst;
  return {bad == 0 && checked > 0, s.str()};
}

// 6. λ_{k+2}(L_G) ≥ binary optimum.
Outcome lambda_k2() {
  int bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(derive_seed(11, seed));
    const int n = 3 + static_cast<int>(rng.index(6));
    const WeightedGraph g = erdos_renyi(n, 0.15 + 0.6 * rng.uniform(), rng.next());
    const auto cand = fixtures::random_candidates(g, 15, rng);
    const int k = 1 + static_cast<int>(rng.index(3));
    const double gap = lambda_k_plus_2(g, k) - brute_force_opt_binary(g, cand, k).lambda;
    if (std::isfinite(gap)) worst = std::min(worst, gap);
    if (gap < -1e-9) ++bad;
  }
  std::ostringstream s;
  s << "40 instances: violations=" << bad << " min gap=" << worst;
  return {bad == 0, s.str()};
}

// 7. End-to-end augmenter.
Outcome end_to_end() {
  bool pass = true;
  std::ostringstream s;
  for (int n : {6, 8, 10}) {
    const WeightedGraph g = path_graph(n);
    const auto cand = make_candidates(g, non_edges(g));
    AugmentOptions opt;
    opt.seed = static_cast<uint64_t>(n);
    const auto r = augment(g, cand, 2, opt);
    bool ok = r.status == AugmentStatus::Accepted;
    if (ok) {
      const double l2 = estimate_lambda2(with_added_edges(g, r.F));
      ok = l2 > estimate_lambda2(g) && static_cast<long>(r.F.size()) <= r.support_cap &&
           r.weight_total <= r.weight_cap + 1e-9;
    }
    pass = pass && ok;
    s << "P" << n << ": " << status_name(r.status);
    if (!r.reason.empty()) s << "(" << r.reason << ", gamma=" << r.last_gamma << ", delta=" << r.delta << ")";
    s << "; ";
  }
  const WeightedGraph t = disjoint_triangles();
  const auto r = augment(t, make_candidates(t, {}), 1, AugmentOptions{});
  const bool tri = r.status == AugmentStatus::Reject && r.reason == "sdp_infeasible_at_gamma0" && r.certificate_verified;
  pass = pass && tri;
  s << "triangles: " << status_name(r.status) << "(" << r.reason << ", certificate "
    << (r.certificate_verified ? "verified" : "unverified") << ")";
  return {pass, s.str()};
}

// 8. Approximate backends against the exact oracle.
Outcome approx_backends() {
  const double eps_a = 0.1;
  int states = 0, good = 0, lower_ok = 0, upper_ok = 0, eig_ok = 0;
  for (uint64_t seed = 0; states < 20 && seed < 200; ++seed) {
    const auto c = fixtures::random_subgraph_case(derive_seed(12, seed), 8, 16);
    const auto inst = setup_instance(c.g, c.w, default_regularization(c.g, c.w), c.k);
    const auto proj = compute_projection(inst, ProjectionMode::Exact, 0);
    SparsifyOptions opt;
    opt.seed = derive_seed(13, seed);
    opt.stop_after = 1 + static_cast<long>(seed % 4);
    opt.check_bounds = false;
    const auto st = run_sparsifier_once(inst, opt).state;
    const double eta = default_eta(inst.n, opt.eps, opt.q);
    if (!check_assumption(inst, proj, st, eta).ok) continue;
    ++states;
    const Eigen::MatrixXd b = proj.Z * (st.A - inst.X) * proj.Z;
    const auto ex = exact_potentials(st.A, b, st.u, st.l, opt.q, inst.T, proj.P, proj.Z, inst.Mbar, inst.V);
    const auto within = [&](const Eigen::VectorXd& approx, const Eigen::VectorXd& exact) {
      const double floor = 1e-12 * exact.maxCoeff();
      for (Eigen::Index i = 0; i < exact.size(); ++i)
        if (exact(i) > floor && std::abs(approx(i) / exact(i) - 1) > eps_a) return false;
      return true;
    };
    const uint64_t s = derive_seed(14, seed);
    const bool lo = within(approx_lower_resistances(inst, proj, st, eps_a, s, true), ex.R_lower);
    const bool up = within(approx_upper_resistances(inst, st, eps_a, eta, s), ex.R_upper);
    const auto res = relative_resistances(inst, proj, st);
    const auto e = approx_extreme_eigs(inst, proj, st, eps_a, eta, s);
    const bool eg = std::abs(e.alpha1 / res.mu_max - 1) <= eps_a && std::abs(e.alpha2 / res.mu_min - 1) <= eps_a &&
                    std::abs(e.alpha3 / res.lower_pinv_max - 1) <= eps_a;
    lower_ok += lo;
    upper_ok += up;
    eig_ok += eg;
    good += lo && up && eg;
  }
  std::ostringstream s;
  s << states << " states: lower ok=" << lower_ok << " upper ok=" << upper_ok << " extreme eigs ok=" << eig_ok
    << " all three=" << good;
  return {states == 20 && lower_ok >= 18 && upper_ok >= 18 && eig_ok >= 18, s.str()};
}

// 9. Sampled w wᵀ averages to (ε/(qρ)) M̄.
Outcome monte_carlo() {
  const auto c = fixtures::random_subgraph_case(derive_seed(15, 0), 10, 10);
  const auto inst = setup_instance(c.g, c.w, default_regularization(c.g, c.w), c.k);
  const auto proj = compute_projection(inst, ProjectionMode::Exact, 0);
  SparsifyOptions opt;
  opt.seed = 3;
  opt.stop_after = 2;
  opt.check_bounds = false;
  const auto st = run_sparsifier_once(inst, opt).state;
  const auto res = relative_resistances(inst, proj, st);
  Eigen::VectorXd cum(inst.m());
  double acc = 0.0;
  for (int i = 0; i < inst.m(); ++i) cum(i) = (acc += res.total(i));
  const int draws = 5000;
  const int r = inst.r;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(r, r), sq = Eigen::MatrixXd::Zero(r, r);
  Rng rng(99);
  for (int t = 0; t < draws; ++t) {
    const int i = sample_index(cum, rng.uniform());
    const Eigen::VectorXd w = std::sqrt(opt.eps / (opt.q * res.total(i))) * inst.V.col(i);
    const Eigen::MatrixXd ww = w * w.transpose();
    sum += ww;
    sq += ww.cwiseProduct(ww);
  }
  const Eigen::MatrixXd mean = sum / draws;
  const Eigen::MatrixXd var = (sq / draws - mean.cwiseProduct(mean)) * draws / (draws - 1.0);
  const Eigen::MatrixXd target = opt.eps / (opt.q * res.rho) * inst.Mbar;
  double worst = 0.0;
  int over = 0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const double se = std::sqrt(std::max(var(a, b), 0.0) / draws);
      const double dev = std::abs(mean(a, b) - target(a, b));
      const double z = se > 0 ? dev / se : (dev <= 1e-15 * target.cwiseAbs().maxCoeff() ? 0.0 : HUGE_VAL);
      worst = std::max(worst, z);
      if (z > 5.0) ++over;
    }
  std::ostringstream s;
  s << r << "x" << r << " entries, " << draws << " draws: max |dev|/SE=" << worst << " entries over 5 SE=" << over;
  return {over == 0, s.str()};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> list = {
      {"SDP dichotomy soundness", sdp_dichotomy},
      {"oracle width", oracle_width_check},
      {"spectral-sparsifier specialization", spectral_specialization},
      {"subgraph sparsifier budgets and quality", subgraph_budgets},
      {"rank-one update inequalities", rank_one},
      {"lambda_{k+2} upper bound", lambda_k2},
      {"end-to-end augmenter", end_to_end},
      {"approximate backends", approx_backends},
      {"Monte Carlo expectation identity", monte_carlo},
  };
  return list;
}

bool run(int id) {
  const auto& [name, fn] = criteria()[static_cast<size_t>(id - 1)];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "criterion " << id << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " -- " << o.detail
            << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int which = 0;
  app.add_option("--criterion", which, "criterion to run (1-9); all when omitted")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  bool ok = true;
  if (which > 0) {
    ok = run(which);
  } else {
    for (int i = 1; i <= 9; ++i) ok = run(i) && ok;
  }
  return ok ? 0 : 1;
}
