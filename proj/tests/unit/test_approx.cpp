#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specaug/approx.hpp"
#include "specaug/errors.hpp"
#include "specaug/rng.hpp"
#include "specaug/sparsifier.hpp"
#include "specaug/spectral.hpp"
#include "support/fixtures.hpp"

using namespace specaug;

namespace {

struct StateCase {
  SparsifyInstance inst;
  ProjectionData proj;
  SparsifyState st;
};

StateCase state_case(uint64_t seed, long steps) {
  const auto c = fixtures::random_subgraph_case(seed, 8, 16);
  StateCase s{setup_instance(c.g, c.w, default_regularization(c.g, c.w), c.k), {}, {}};
  s.proj = compute_projection(s.inst, ProjectionMode::Exact, 0);
  if (steps == 0) {
    s.st = initial_state(s.inst);
  } else {
    SparsifyOptions opt;
    opt.seed = seed;
    opt.stop_after = steps;
    opt.check_bounds = false;
    s.st = run_sparsifier_once(s.inst, opt).state;
  }
  return s;
}

double max_rel(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a(i) / b(i) - 1.0));
  return m;
}

}  // namespace

TEST_CASE("eta and degree") {
  CHECK(default_eta(16, 0.05, 10) == doctest::Approx(std::pow(0.05, 2.2) * std::pow(16.0, -0.2)));
  for (double eta : {0.3, 0.1, 1e-2, 1e-4}) CHECK(chebyshev_degree(eta / 2, 0.1) > chebyshev_degree(eta, 0.1));
  CHECK(chebyshev_degree(0.1, 0.05) > chebyshev_degree(0.1, 0.1));
  CHECK_THROWS_AS(chebyshev_degree(0.0, 0.1), InputError);
}

TEST_CASE("chebyshev inverse square root") {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const int r = 6;
    Eigen::MatrixXd y(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) y(i, j) = rng.normal();
    Eigen::MatrixXd a = y * y.transpose();
    const double eta = 0.01, u = lambda_max_sym(a) / (1 - eta) * (1 + 0.5 * rng.uniform());
    const Eigen::MatrixXd exact = spectral_apply(eig_sym(a), [u](double x) { return 1 / std::sqrt(u - x); });
    const Eigen::MatrixXd block = Eigen::MatrixXd::Identity(r, r);
    const Eigen::MatrixXd approx = chebyshev_inv_sqrt_apply(a, u, eta, 0.1, block);
    CHECK((approx - exact).norm() <= 0.01 * exact.norm());
    // applying to a wide block goes through the identity route
    Eigen::MatrixXd wide(r, 3 * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < 3 * r; ++j) wide(i, j) = rng.normal();
    CHECK((chebyshev_inv_sqrt_apply(a, u, eta, 0.1, wide) - exact * wide).norm() <= 0.01 * (exact * wide).norm());
  }
}

TEST_CASE("upper resistances at A = 0") {
  const auto inst = setup_spectral_instance(complete_graph(8), 1e-8);
  SparsifyState st = initial_state(inst);
  st.A.setZero();
  const double eta = default_eta(inst.n, 0.05, 10);
  const Eigen::VectorXd r = approx_upper_resistances(inst, st, 0.1, eta, 3);
  const Eigen::VectorXd expect = inst.V.colwise().squaredNorm().transpose() / st.u;
  for (int i = 0; i < inst.num_edges; ++i) CHECK(std::abs(r(i) / expect(i) - 1) < 1e-3);
}

TEST_CASE("upper resistances on random states") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = state_case(seed, 3);
    const double eta = default_eta(s.inst.n, 0.05, 10);
    if (!check_assumption(s.inst, s.proj, s.st, eta).ok) continue;
    const auto exact = relative_resistances(s.inst, s.proj, s.st);
    const Eigen::VectorXd r = approx_upper_resistances(s.inst, s.st, 0.1, eta, seed);
    CHECK(max_rel(r, exact.upper) <= 0.1);
  }
}

TEST_CASE("lower resistances") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = state_case(seed, 2);
    const auto exact = relative_resistances(s.inst, s.proj, s.st);
    // small k: exact summation path
    const Eigen::VectorXd direct = approx_lower_resistances(s.inst, s.proj, s.st, 0.1, seed);
    for (int i = 0; i < s.inst.m(); ++i)
      CHECK(std::abs(direct(i) - exact.lower(i)) <= 1e-7 * std::max(exact.lower(i), 1e-12) + 1e-15);
  }
  int good = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = state_case(seed, 2);
    const auto exact = relative_resistances(s.inst, s.proj, s.st);
    const Eigen::VectorXd jl = approx_lower_resistances(s.inst, s.proj, s.st, 0.1, seed, true);
    double worst = 0.0;
    for (int i = 0; i < s.inst.m(); ++i)
      if (exact.lower(i) > 1e-12 * exact.lower.maxCoeff()) worst = std::max(worst, std::abs(jl(i) / exact.lower(i) - 1));
    if (worst <= 0.1) ++good;
  }
  CHECK(good >= 18);
}

TEST_CASE("lower resistance of a vector outside the frame") {
  auto s = state_case(2, 0);
  const Eigen::MatrixXd& vbb = s.proj.Vbb;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(s.inst.r);
  x -= vbb * (vbb.transpose() * vbb).ldlt().solve(vbb.transpose() * x);
  s.inst.S.col(0) = x;
  const Eigen::VectorXd r = approx_lower_resistances(s.inst, s.proj, s.st, 0.1, 0);
  CHECK(std::abs(r(0)) < 1e-20 + 1e-12 * r.maxCoeff());
}

TEST_CASE("trace power estimates") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  d.diagonal() << 1.0, 2.0, 3.0, 5.0;
  for (int t : {1, 3, 10}) {
    const double est = trace_power_lambda_max(d, 2 * t + 1, 0, 0);
    const double hand = std::pow(1 + std::pow(2.0, 2 * t + 1) + std::pow(3.0, 2 * t + 1) + std::pow(5.0, 2 * t + 1),
                                 1.0 / (2 * t + 1));
    CHECK(est == doctest::Approx(hand).epsilon(1e-10));
  }
  CHECK(trace_power_lambda_max(d, 201, 0, 0) == doctest::Approx(5.0).epsilon(0.01));

  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const int n = 8;
    Eigen::MatrixXd y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y(i, j) = rng.normal();
    const Eigen::MatrixXd m = y * y.transpose();
    const double lmax = lambda_max_sym(m);
    for (int t : {1, 2, 5}) {
      const double est = trace_power_lambda_max(m, 2 * t, 0, 0);
      CHECK(est >= lmax * (1 - 1e-12));
      CHECK(est <= std::pow(n, 1.0 / (2 * t)) * lmax * (1 + 1e-12));
    }
  }
  CHECK(trace_power_t(100, 0.1) >= 1);
  CHECK(2 * trace_power_t(100, 0.1) + 1 >= std::log(100.0) / std::log1p(0.05));
  CHECK_THROWS_AS(trace_power_lambda_max(d, 0, 0, 0), InputError);
}

TEST_CASE("extreme eigenvalue estimates") {
  int good = 0, total = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = state_case(seed, 1 + seed % 3);
    const double eta = default_eta(s.inst.n, 0.05, 10);
    if (!check_assumption(s.inst, s.proj, s.st, eta).ok) continue;
    ++total;
    const auto exact = relative_resistances(s.inst, s.proj, s.st);
    const auto e = approx_extreme_eigs(s.inst, s.proj, s.st, 0.1, eta, seed);
    const bool ok = std::abs(e.alpha1 / exact.mu_max - 1) <= 0.1 && std::abs(e.alpha2 / exact.mu_min - 1) <= 0.1 &&
                    std::abs(e.alpha3 / exact.lower_pinv_max - 1) <= 0.1;
    if (ok) ++good;
  }
  CHECK(total >= 8);
  CHECK(good >= total - 1);
}

TEST_CASE("assumption check") {
  const auto s = state_case(4, 0);
  const double eta = default_eta(s.inst.n, 0.05, 10);
  const auto rep = check_assumption(s.inst, s.proj, s.st, eta);
  CHECK(rep.ok);
  CHECK(rep.upper_margin > 0);
  CHECK(rep.lower_margin == doctest::Approx(std::abs(s.st.l) * (1 - eta)));
  SparsifyState bad = s.st;
  bad.u = lambda_max_sym(bad.A) * (1 + eta / 2) + 1e-12;
  CHECK_FALSE(check_assumption(s.inst, s.proj, bad, eta).ok);
  CHECK_THROWS_AS(approx_upper_resistances(s.inst, bad, 0.1, eta, 0), AssumptionViolated);
}

TEST_CASE("approx backend end to end") {
  const auto c = fixtures::random_subgraph_case(6, 8, 12);
  const auto inst = setup_instance(c.g, c.w, default_regularization(c.g, c.w), c.k);
  SparsifyOptions opt;
  opt.seed = 2;
  opt.backend = Backend::Approx;
  const auto r = run_sparsifier_once(inst, opt);
  MESSAGE("terminated=" << r.terminated << " fallbacks=" << r.approx_fallbacks << " iterations=" << r.iterations);
  CHECK(r.support <= r.K);
  CHECK(r.lambda_max_A < r.u_final);
  CHECK(r.lambda_min_Bk > r.l_final);
}
