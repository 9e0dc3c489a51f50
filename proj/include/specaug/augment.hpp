#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specaug/graph.hpp"
#include "specaug/sdp.hpp"
#include "specaug/sparsifier.hpp"

namespace specaug {

struct AugmentOptions {
  double q = 10.0;
  double eps = 0.05;
  double delta_prime = 0.1;
  uint64_t seed = 0;
  double c_reject = 1.0;
  Backend backend = Backend::Exact;
  int retries = 5;
  bool use_sketch = false;
  double support_threshold = 1e-10;
};

enum class AugmentStatus { Accepted, Reject, RetryExhausted };
const char* status_name(AugmentStatus s);

// One row per solved γ.
struct GammaAudit {
  double gamma = 0.0;
  bool feasible = false;
  long sdp_rounds = 0;
  double sdp_lambda = 0.0;
  int sdp_support = 0;
  int sparsifier_attempts = 0;
  long sparsifier_iterations = 0;
  long sparsifier_samples = 0;
  int F_size = 0;
  double lambda2_exact = 0.0;
  double lambda2_estimate = 0.0;
  double threshold = 0.0;
  std::string outcome;
};

struct AugmentResult {
  AugmentStatus status = AugmentStatus::Reject;
  std::string reason;  // Reject / RetryExhausted only
  double last_gamma = 0.0;
  std::optional<SdpIterate> certificate;
  bool certificate_verified = false;
  std::vector<Edge> F;  // added edges with weights
  double lambda2_estimate = 0.0;
  double lambda2_exact = 0.0;
  double lambda2_base = 0.0;
  double gamma0 = 0.0;
  double gamma_used = 0.0;
  long sdp_rounds = 0;
  long support_cap = 0;
  double weight_cap = 0.0;
  double weight_total = 0.0;
  double delta = 0.0;
  double reject_threshold = 0.0;
  std::vector<GammaAudit> audit;
};

AugmentResult augment(const WeightedGraph& g, const CandidateSet& cand, int k, const AugmentOptions& opt);

// Exact λ₂ (0 for disconnected graphs).
double estimate_lambda2(const WeightedGraph& h);
// Shifted inverse iteration on 1^⊥; 0 for disconnected graphs.
double estimate_lambda2_iterative(const WeightedGraph& h, uint64_t seed, int iterations = 60);
bool is_connected(const WeightedGraph& h);

WeightedGraph with_added_edges(const WeightedGraph& g, const std::vector<Edge>& f);

}  // namespace specaug
