#include "specaug/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specaug/errors.hpp"
#include "specaug/rng.hpp"

namespace specaug {

namespace {

uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
}

void check_endpoints(int u, int v, int n) {
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw InputError("vertex out of range: (" + std::to_string(u) + ", " + std::to_string(v) +
                     ") with n = " + std::to_string(n));
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
}

}  // namespace

double default_weight_bound(int n) {
  const double nn = std::max(2, n);
  return 1e6 * nn * nn * nn;
}

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges, std::optional<double> weight_bound)
    : n_(n) {
  if (n < 1) throw InputError("vertex count must be positive");
  const double bound = weight_bound.value_or(default_weight_bound(n));
  edges_.reserve(edges.size());
  for (auto e : edges) {
    check_endpoints(e.u, e.v, n);
    if (!std::isfinite(e.w)) throw InputError("weight must be finite");
    if (e.w < 0.0) throw InputError("weight must be nonnegative");
    if (e.w > bound) throw InputError("weight exceeds bound " + std::to_string(bound));
    if (e.u > e.v) std::swap(e.u, e.v);
    edges_.push_back(e);
    keys_.push_back(pair_key(e.u, e.v));
  }
  std::vector<uint64_t> sorted = keys_;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    const int u = static_cast<int>(*dup >> 32), v = static_cast<int>(*dup & 0xffffffffu);
    throw InputError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  }
  keys_ = std::move(sorted);
}

bool WeightedGraph::has_edge(int u, int v) const {
  return std::binary_search(keys_.begin(), keys_.end(), pair_key(u, v));
}

std::vector<double> WeightedGraph::degrees() const {
  std::vector<double> d(n_, 0.0);
  for (const auto& e : edges_) {
    d[e.u] += e.w;
    d[e.v] += e.w;
  }
  return d;
}

CandidateSet make_candidates(const WeightedGraph& g, std::vector<VertexPair> edges,
                             std::optional<double> delta) {
  std::vector<uint64_t> keys;
  for (auto& [u, v] : edges) {
    check_endpoints(u, v, g.n());
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v))
      throw InputError("candidate (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") is already a base edge");
    keys.push_back(pair_key(u, v));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw InputError("duplicate candidate edge");
  const double need = std::max(max_degree(g), max_degree(g.n(), edges));
  CandidateSet c;
  c.edges = std::move(edges);
  c.delta = delta.value_or(need);
  if (c.delta < need - 1e-12)
    throw InputError("degree bound smaller than the maximum degree of G or W");
  return c;
}

Eigen::MatrixXd laplacian(const WeightedGraph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const auto& e : g.edges()) add_edge_laplacian(l, e.u, e.v, e.w);
  return l;
}

Eigen::MatrixXd laplacian(int n, const std::vector<VertexPair>& edges) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : edges) add_edge_laplacian(l, u, v, 1.0);
  return l;
}

Eigen::VectorXd incidence_vector(int u, int v, int n) {
  if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("incidence endpoint out of range");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(u) += 1.0;
  b(v) -= 1.0;
  return b;
}

Eigen::MatrixXd center_projector(int n) {
  return Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
}

double max_degree(const WeightedGraph& g) {
  const auto d = g.degrees();
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

double max_degree(int n, const std::vector<VertexPair>& edges) {
  std::vector<double> d(n, 0.0);
  for (const auto& [u, v] : edges) {
    d[u] += 1.0;
    d[v] += 1.0;
  }
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

std::vector<VertexPair> non_edges(const WeightedGraph& g) {
  std::vector<VertexPair> out;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

WeightedGraph complete_graph(int n, double w) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v, w});
  return WeightedGraph(n, e);
}

WeightedGraph path_graph(int n, double w) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.push_back({u, u + 1, w});
  return WeightedGraph(n, e);
}

WeightedGraph cycle_graph(int n, double w) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) e.push_back({u, (u + 1) % n, w});
  return WeightedGraph(n, e);
}

WeightedGraph star_graph(int leaves, double w) {
  std::vector<Edge> e;
  for (int v = 1; v <= leaves; ++v) e.push_back({0, v, w});
  return WeightedGraph(leaves + 1, e);
}

// Two cliques K_a and K_b joined by a single bridge edge.
WeightedGraph barbell_graph(int a, int b) {
  std::vector<Edge> e;
  for (int u = 0; u < a; ++u)
    for (int v = u + 1; v < a; ++v) e.push_back({u, v, 1.0});
  for (int u = a; u < a + b; ++u)
    for (int v = u + 1; v < a + b; ++v) e.push_back({u, v, 1.0});
  e.push_back({a - 1, a, 1.0});
  return WeightedGraph(a + b, e);
}

WeightedGraph disjoint_triangles() {
  return WeightedGraph(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
}

WeightedGraph erdos_renyi(int n, double p, uint64_t seed, double wmin, double wmax) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < p) e.push_back({u, v, wmin + (wmax - wmin) * rng.uniform()});
  return WeightedGraph(n, e);
}

}  // namespace specaug
