#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "specaug/augment.hpp"
#include "specaug/graph.hpp"
#include "specaug/oracles.hpp"
#include "specaug/sdp.hpp"
#include "specaug/sparsifier.hpp"

namespace specaug {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Edge-list format: header `n <count>`, then one `u v w` per line; `#` starts a comment.
WeightedGraph parse_graph(std::istream& in, const std::string& source = "<input>");
WeightedGraph parse_graph_file(const std::string& path);
// Candidate lists: `u v` or `u v w` per line (w defaults to 1); optional `n` header is ignored.
std::vector<Edge> parse_candidates(std::istream& in, int n, const std::string& source = "<input>");
std::vector<Edge> parse_candidate_file(const std::string& path, int n);
std::vector<VertexPair> pairs_of(const std::vector<Edge>& edges);

// Serializes with every floating value at 17 significant digits.
std::string dump_json(const Json& j, int indent = 2);

struct RunConfig {
  double q = 10.0;
  double eps = 0.05;
  double delta_prime = 0.1;
  int k = 1;
  uint64_t seed = 0;
  std::string backend = "exact";  // exact | approx
  double tol = 1e-6;
  int retries = 5;
  double c_reject = 1.0;
  std::string output;
  void validate() const;
};

// Fields present in the JSON object override `cfg`.
void load_config_json(const std::string& path, RunConfig& cfg);
Json config_json(const RunConfig& cfg);
// Default seed from SPECAUG_SEED, else 0.
uint64_t default_seed_from_env();

Json edges_json(const std::vector<Edge>& edges);
Json augment_report(const AugmentResult& r, const RunConfig& cfg);
AugmentResult augment_result_from_json(const Json& j);
Json sdp_report(const SdpInstance& inst, const SolveResult& r, const RunConfig& cfg);
Json sparsify_report(const SparsifyInstance& inst, const SparsifierResult& r, const RunConfig& cfg);
Json brute_report(const BruteForceResult& r, const std::vector<VertexPair>& cand, int k);
Json ascent_report(const AscentResult& r, const std::vector<VertexPair>& cand, int k);

}  // namespace specaug
