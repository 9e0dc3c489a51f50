#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace specaug {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

using VertexPair = std::pair<int, int>;

// Default cap on edge weights: polynomial in n.
double default_weight_bound(int n);

// Undirected weighted graph. Edges are canonicalized to u < v on construction
// and the incidence orientation is head = smaller id. Immutable afterwards.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edges, std::optional<double> weight_bound = std::nullopt);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const& { return edges_; }
  std::vector<Edge> edges() && { return std::move(edges_); }
  bool has_edge(int u, int v) const;
  std::vector<double> degrees() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<uint64_t> keys_;  // sorted canonical keys for lookup
};

// Candidate edges E_W (unweighted) together with the common degree bound Δ.
struct CandidateSet {
  std::vector<VertexPair> edges;
  double delta = 0.0;
};

// Canonicalizes and validates candidates against `g`; Δ defaults to
// max(max_degree(G), max_degree(W)).
CandidateSet make_candidates(const WeightedGraph& g, std::vector<VertexPair> edges,
                             std::optional<double> delta = std::nullopt);

Eigen::MatrixXd laplacian(const WeightedGraph& g);
Eigen::MatrixXd laplacian(int n, const std::vector<VertexPair>& edges);
Eigen::VectorXd incidence_vector(int u, int v, int n);
Eigen::MatrixXd center_projector(int n);
double max_degree(const WeightedGraph& g);
double max_degree(int n, const std::vector<VertexPair>& edges);

// Adds x * b_e b_e^T to `l` in place.
inline void add_edge_laplacian(Eigen::MatrixXd& l, int u, int v, double x) {
  l(u, u) += x;
  l(v, v) += x;
  l(u, v) -= x;
  l(v, u) -= x;
}

// L_e • Z = Z_uu + Z_vv - 2 Z_uv.
inline double edge_inner(const Eigen::MatrixXd& z, int u, int v) {
  return z(u, u) + z(v, v) - z(u, v) - z(v, u);
}

std::vector<VertexPair> non_edges(const WeightedGraph& g);

WeightedGraph complete_graph(int n, double w = 1.0);
WeightedGraph path_graph(int n, double w = 1.0);
WeightedGraph cycle_graph(int n, double w = 1.0);
WeightedGraph star_graph(int leaves, double w = 1.0);
WeightedGraph barbell_graph(int a, int b);
WeightedGraph disjoint_triangles();
WeightedGraph erdos_renyi(int n, double p, uint64_t seed, double wmin = 1.0, double wmax = 1.0);

}  // namespace specaug
