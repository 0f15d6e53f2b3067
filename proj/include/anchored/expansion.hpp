#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "anchored/enumeration.hpp"
#include "anchored/graph.hpp"

namespace anchored {

enum class BoundaryMode { kEdge, kVertex };

std::string_view boundary_mode_name(BoundaryMode m);
BoundaryMode parse_boundary_mode(std::string_view s);

// The graph handed to the expansion routines does not contain every
// neighbor of every set being measured.
class TruncationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact per-size minima over connected sets S containing the root:
// f(k) = min |dS| / k over |S| = k, and the anchored tail
// iota(n) = min over n <= k <= max_size of f(k). Vectors are indexed by k
// (entry 0 unused).
struct ExpansionProfile {
  BoundaryMode mode = BoundaryMode::kEdge;
  std::size_t max_size = 0;
  std::vector<std::size_t> min_boundary;
  std::vector<std::uint64_t> set_counts;
  std::vector<double> f;
  std::vector<double> iota;

  double f_at(std::size_t k) const { return f.at(k); }
  double iota_at(std::size_t n) const { return iota.at(n); }
};

// Requires g to be complete or to contain the ball of radius max_size around
// the root: every vertex of a counted set then sits at distance at most
// max_size - 1, so all of its neighbors are present.
ExpansionProfile expansion_profile(const FiniteGraph& g, std::uint32_t root, std::size_t max_size, BoundaryMode mode,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

// Same, on the ball of radius max_size around the oracle's basepoint.
ExpansionProfile expansion_profile(const GraphOracle& oracle, std::size_t max_size, BoundaryMode mode,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

// Exact counts |A_n| of connected sets S containing the root with boundary
// size n (edge or vertex boundary), for n <= max_boundary, among sets with
// |S| <= size_cap.
struct AnimalCounts {
  BoundaryMode mode = BoundaryMode::kEdge;
  std::size_t max_boundary = 0;
  std::size_t size_cap = 0;
  std::map<std::size_t, std::uint64_t> counts;  // n -> |A_n|, zero entries kept for n <= max_boundary
  // Some set of size size_cap still has boundary <= max_boundary, so larger
  // sets may contribute: the counts are lower bounds only.
  bool unbounded_within_region = false;
  // True when the counts are provably exact. In a tree whose non-root
  // vertices have degree >= 2, removing a non-root leaf never increases the
  // boundary, so once no set at the cap has boundary <= max_boundary no
  // larger set does either. A truncated region only qualifies when the
  // ambient graph is known to be a tree as well.
  bool complete = false;

  std::uint64_t count(std::size_t n) const {
    auto it = counts.find(n);
    return it == counts.end() ? 0 : it->second;
  }
};

AnimalCounts animal_counts(const FiniteGraph& g, std::uint32_t root, std::size_t max_boundary, BoundaryMode mode,
                           std::optional<std::size_t> size_cap = std::nullopt,
                           std::uint64_t budget = kDefaultEnumerationBudget, bool ambient_is_tree = false);

AnimalCounts animal_counts(const GraphOracle& oracle, std::size_t max_boundary, BoundaryMode mode,
                           std::optional<std::size_t> size_cap = std::nullopt,
                           std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace anchored
