#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specaug/errors.hpp"
#include "specaug/graph.hpp"
#include "specaug/rng.hpp"
#include "specaug/spectral.hpp"

using namespace specaug;

TEST_CASE("laplacian closed forms") {
  const Eigen::MatrixXd k3 = laplacian(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k3(i, j) == doctest::Approx(i == j ? 2.0 : -1.0));

  const Eigen::MatrixXd l = laplacian(WeightedGraph(2, {{0, 1, 3.0}}));
  CHECK(l(0, 0) == 3.0);
  CHECK(l(1, 1) == 3.0);
  CHECK(l(0, 1) == -3.0);
  CHECK(l(1, 0) == -3.0);

  const auto ev = eig_sym(laplacian(path_graph(3))).values;
  CHECK(ev(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(1.0));
  CHECK(ev(2) == doctest::Approx(3.0));
}

TEST_CASE("incidence vectors") {
  const Eigen::VectorXd b = incidence_vector(0, 2, 3);
  CHECK(b(0) == 1.0);
  CHECK(b(1) == 0.0);
  CHECK(b(2) == -1.0);
  const Eigen::VectorXd f = incidence_vector(1, 0, 2);
  CHECK(f(0) == -1.0);
  CHECK(f(1) == 1.0);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng.index(8));
    const int u = static_cast<int>(rng.index(n));
    int v = static_cast<int>(rng.index(n));
    if (v == u) v = (u + 1) % n;
    CHECK(incidence_vector(u, v, n).squaredNorm() == 2.0);
  }
}

TEST_CASE("center projector") {
  CHECK(center_projector(1)(0, 0) == 0.0);
  const Eigen::MatrixXd p2 = center_projector(2);
  CHECK(p2(0, 0) == doctest::Approx(0.5));
  CHECK(p2(0, 1) == doctest::Approx(-0.5));
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const WeightedGraph g = erdos_renyi(3 + t, 0.5, rng.next(), 0.1, 3.0);
    const Eigen::MatrixXd l = laplacian(g), p = center_projector(g.n());
    CHECK((p * l - l).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((l * p - l).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((p * l * p - l).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("max degree") {
  CHECK(max_degree(star_graph(4)) == 4.0);
  CHECK(max_degree(WeightedGraph(5, {})) == 0.0);
  CHECK(max_degree(path_graph(3)) == 2.0);
}

TEST_CASE("laplacian quadratic form and kernel") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const WeightedGraph g = erdos_renyi(4 + t, 0.4, rng.next(), 0.5, 2.0);
    const Eigen::MatrixXd l = laplacian(g);
    CHECK(std::abs(lambda_min_sym(l)) < 1e-9 * std::max(1.0, l.norm()));
    CHECK((l * Eigen::VectorXd::Ones(g.n())).norm() < 1e-12 * std::max(1.0, l.norm()));
    for (int s = 0; s < 100; ++s) {
      Eigen::VectorXd x(g.n());
      for (int i = 0; i < g.n(); ++i) x(i) = rng.normal();
      double q = 0.0;
      for (const auto& e : g.edges()) q += e.w * (x(e.u) - x(e.v)) * (x(e.u) - x(e.v));
      CHECK(std::abs(x.dot(l * x) - q) <= 1e-10 * std::max(1.0, q));
    }
  }
}

TEST_CASE("construction validation") {
  const WeightedGraph g(3, {{2, 0, 1.5}});
  REQUIRE(g.m() == 1);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 2);
  CHECK(g.has_edge(2, 0));
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), InputError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 0, 1.0}}), InputError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 3, 1.0}}), InputError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, -1.0}}), InputError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1e30}}), InputError);
}

TEST_CASE("candidate sets") {
  const WeightedGraph g = path_graph(4);
  const auto cs = make_candidates(g, {{3, 0}});
  REQUIRE(cs.edges.size() == 1);
  CHECK(cs.edges[0] == VertexPair{0, 3});
  CHECK(cs.delta == 2.0);
  // overlaps the base graph
  CHECK_THROWS_AS(make_candidates(g, {{0, 1}}), InputError);
  CHECK_THROWS_AS(make_candidates(g, {{0, 2}, {2, 0}}), InputError);
  // Δ below the actual degree
  CHECK_THROWS_AS(make_candidates(g, {{0, 2}}, 1.0), InputError);
  CHECK(non_edges(g).size() == 3);
}

TEST_CASE("generators") {
  CHECK(complete_graph(5).m() == 10);
  CHECK(cycle_graph(6).m() == 6);
  CHECK(barbell_graph(4, 3).n() == 7);
  CHECK(barbell_graph(4, 3).m() == 6 + 3 + 1);
  CHECK(disjoint_triangles().m() == 6);
  const auto a = erdos_renyi(10, 0.3, 7), b = erdos_renyi(10, 0.3, 7);
  CHECK(a.m() == b.m());
}
