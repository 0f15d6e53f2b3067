#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>

#include "anchored/lamplighter.hpp"

namespace anchored {

// Word distance from the basepoint in the lamplighter over Z^1, for any lamp
// group F. With a = min(0, m, min supp), b = max(0, m, max supp) the marker
// must sweep [a, b] and end at m, costing (b - a) + min(-a + b - m, b + m - a)
// moves, plus |eta(x)|_F switches at every lit site. Throws
// std::invalid_argument unless the base is the lattice Z^1.
std::int64_t lamplighter_distance_d1(const LamplighterOracle& w, const LampState& s);

struct DistanceBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

// lower = |m|_G + sum |eta(x)|_F: moves and switches are disjoint step types.
// upper = |m|_G + 2|T| + sum |eta(x)|_F for a connected set T holding the
// basepoint, the marker and every lit site: tour T depth first (2(|T|-1)
// moves, switching on the way), then walk to m.
//
// T is grown greedily from the basepoint by breadth-first search to the
// nearest terminal not yet joined; `budget` caps the vertices searched.
DistanceBounds lamplighter_distance_bounds(const LamplighterOracle& w, const LampState& s,
                                           std::size_t budget = 1'000'000);

// Same bounds with T taken inside `region`, which must be connected and hold
// the basepoint, the marker and all lit sites (for a walk, its marker range).
// T is the breadth-first tree of the region pruned to the terminals.
DistanceBounds lamplighter_distance_bounds(const LamplighterOracle& w, const LampState& s,
                                           const std::unordered_set<VertexKey, VertexKeyHash>& region);

// |m|_G, using the closed form when the base oracle provides one and BFS
// otherwise.
std::int64_t base_distance(const GraphOracle& base, const VertexKey& v, std::size_t budget = 1'000'000);

}  // namespace anchored
