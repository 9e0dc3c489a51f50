#pragma once

// Random instance generators shared by the unit and acceptance tests.

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "specaug/graph.hpp"
#include "specaug/rng.hpp"
#include "specaug/sdp.hpp"
#include "specaug/sparsifier.hpp"

namespace fixtures {

using namespace specaug;

inline std::vector<VertexPair> random_candidates(const WeightedGraph& g, int max_m, Rng& rng) {
  auto all = non_edges(g);
  for (size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.index(i)]);
  if (static_cast<int>(all.size()) > max_m) all.resize(max_m);
  return all;
}

inline SdpInstance random_sdp_instance(uint64_t seed, int n_lo = 4, int n_hi = 12, int max_m = 15, int k_hi = 3) {
  Rng rng(seed);
  const int n = n_lo + static_cast<int>(rng.index(n_hi - n_lo + 1));
  const double p = 0.15 + 0.5 * rng.uniform();
  WeightedGraph g = erdos_renyi(n, p, rng.next(), 0.5, 2.0);
  const int m = 1 + static_cast<int>(rng.index(max_m));
  auto cand = random_candidates(g, m, rng);
  const int k = 1 + static_cast<int>(rng.index(k_hi));
  return make_instance(g, cand, k, 0.5);
}

// X = Diag(Z, v, β) with Z PSD and X • N = 1.
inline SdpIterate random_normalized_iterate(const SdpInstance& inst, uint64_t seed) {
  Rng rng(seed);
  const int n = inst.n(), m = inst.m();
  Eigen::MatrixXd y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y(i, j) = rng.normal();
  SdpIterate it;
  it.Z = y * y.transpose() / n;
  it.v = rng.uniform() * 0.5;
  it.beta = Eigen::VectorXd(m);
  for (int e = 0; e < m; ++e) it.beta(e) = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
  const double s = it.normalization(inst);
  it.Z /= s;
  it.v /= s;
  it.beta /= s;
  return it;
}

struct SubgraphCase {
  WeightedGraph g;
  std::vector<Edge> w;
  int k = 2;
};

// Connected-ish base plus weighted candidates; n in [n_lo, n_hi].
inline SubgraphCase random_subgraph_case(uint64_t seed, int n_lo = 8, int n_hi = 25, int k_lo = 2, int k_hi = 4) {
  Rng rng(seed);
  SubgraphCase c;
  const int n = n_lo + static_cast<int>(rng.index(n_hi - n_lo + 1));
  std::vector<Edge> e;
  // sparse base: a random spanning path on a prefix plus a few chords
  for (int v = 1; v < n; ++v)
    if (rng.uniform() < 0.8) e.push_back({static_cast<int>(rng.index(v)), v, 0.5 + rng.uniform()});
  c.g = WeightedGraph(n, e);
  auto cand = random_candidates(c.g, 3 * n, rng);
  for (const auto& [u, v] : cand) c.w.push_back({u, v, 0.2 + rng.uniform()});
  c.k = k_lo + static_cast<int>(rng.index(k_hi - k_lo + 1));
  return c;
}

}  // namespace fixtures
