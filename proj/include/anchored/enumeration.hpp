#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "anchored/graph.hpp"

namespace anchored {

// A connected vertex set visited during enumeration. `members` lists vertex
// indices of the FiniteGraph in insertion order and is only valid during the
// callback.
struct ConnectedSetView {
  std::span<const std::uint32_t> members;
  std::size_t edge_boundary = 0;    // |dS|, using ambient degrees
  std::size_t vertex_boundary = 0;  // |d^V S| inside the graph
};

using ConnectedSetVisitor = std::function<void(const ConnectedSetView&)>;

class EnumerationBudgetExceeded : public BudgetExceeded {
 public:
  EnumerationBudgetExceeded(std::size_t budget, double estimate)
      : BudgetExceeded("enumeration set", budget), estimate_(estimate) {}
  // Knuth random-probe estimate of the total number of sets requested.
  double estimated_count() const noexcept { return estimate_; }

 private:
  double estimate_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 500'000'000;

// Visits every connected set S with root in S and |S| <= max_size exactly
// once. The search is the canonical extension: a node (S, C, X) with
// candidates C (frontier vertices not yet excluded) branches on each c in C
// in order, adding c and excluding the candidates before it. Memory is
// O(|V| + max_size^2 * max degree). Throws EnumerationBudgetExceeded when more
// than `budget` sets would be visited. Sets already passed to `visit` stay
// visited, so callers that aggregate should discard their partial state.
void enumerate_connected_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size,
                              const ConnectedSetVisitor& visit, std::uint64_t budget = kDefaultEnumerationBudget);

// Knuth's unbiased estimator of the number of connected sets that the call
// above would visit, averaged over `probes` random root-to-leaf probes.
double estimate_connected_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size, std::size_t probes,
                               std::uint64_t seed);

struct ConnectedSet {
  std::vector<std::uint32_t> members;  // sorted
  std::size_t edge_boundary = 0;
  std::size_t vertex_boundary = 0;

  friend auto operator<=>(const ConnectedSet&, const ConnectedSet&) = default;
};

// Materialized, sorted list; intended for small graphs and tests.
std::vector<ConnectedSet> collect_connected_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size);

}  // namespace anchored
