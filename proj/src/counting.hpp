#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bp.hpp"
#include "graph.hpp"

namespace ddgp {

// A-priori solution count from graph topology alone. Exact counting is only
// possible when every cluster induces a K-clique; otherwise the count depends
// on the edge weights.
struct CountPrediction {
  enum class Kind { ExactPowerOfTwo, UpperBoundOnly, NotApplicable };
  Kind kind = Kind::NotApplicable;
  std::optional<std::uint64_t> value;  // 2^(n-K) when applicable
  std::string rationale;
};

// ExactPowerOfTwo(2^(n-K)) iff every G[U_j] is a K-clique and there are no
// pruning edges; UpperBoundOnly(2^(n-K)) when the cliques hold but pruning
// edges exist; NotApplicable otherwise, naming the first non-clique cluster.
// Counts follow the solver's convention: mirror images are distinct.
CountPrediction predict_count(const WeightedGraph& graph,
                              const DiscretizationScheme& scheme);

struct RecurrenceReport {
  bool holds = true;
  std::vector<std::string> violations;
};

// Verifies a_j <= 2 a_l(j) for all ranks j > K; on instances with no pruning
// edges and every cluster a K-clique the equality a_j = 2 a_l(j) is verified
// as well. stats must come from a completed YES solve.
RecurrenceReport check_recurrence(const BpStats& stats, const WeightedGraph& graph,
                                  const DiscretizationScheme& scheme);

}  // namespace ddgp
