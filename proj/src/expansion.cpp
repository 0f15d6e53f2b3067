#include "anchored/expansion.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "anchored/stretch.hpp"

namespace anchored {

std::string_view boundary_mode_name(BoundaryMode m) { return m == BoundaryMode::kEdge ? "edge" : "vertex"; }

BoundaryMode parse_boundary_mode(std::string_view s) {
  if (s == "edge") return BoundaryMode::kEdge;
  if (s == "vertex") return BoundaryMode::kVertex;
  throw std::invalid_argument("boundary mode must be edge or vertex");
}

namespace {

void require_region(const FiniteGraph& g, std::uint32_t root, std::size_t max_size) {
  if (root >= g.size()) throw std::invalid_argument("root out of range");
  if (g.complete) return;
  if (g.distance[root] != 0) throw TruncationError("truncated graph must be a ball around the root");
  if (g.radius < max_size) {
    throw TruncationError("ball radius " + std::to_string(g.radius) + " is too small for sets of size " +
                          std::to_string(max_size) + "; need radius >= " + std::to_string(max_size));
  }
}

std::size_t boundary_of(const ConnectedSetView& s, BoundaryMode mode) {
  return mode == BoundaryMode::kEdge ? s.edge_boundary : s.vertex_boundary;
}

bool oracle_is_tree(const GraphOracle& oracle) {
  switch (oracle.family()) {
    case Family::kRegularTree:
    case Family::kRootedTree:
    case Family::kGaltonWatson:
      return true;
    case Family::kStretch:
      // Replacing edges by paths keeps a tree a tree.
      return oracle_is_tree(dynamic_cast<const StretchOracle&>(oracle).base());
    default:
      return false;
  }
}

bool leafless_tree_region(const FiniteGraph& g, std::uint32_t root) {
  if (g.edges.size() + 1 != g.size()) return false;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (v != root && g.ambient_degree[v] < 2) return false;
  }
  return true;
}

}  // namespace

ExpansionProfile expansion_profile(const FiniteGraph& g, std::uint32_t root, std::size_t max_size, BoundaryMode mode,
                                   std::uint64_t budget) {
  if (max_size == 0) throw std::invalid_argument("max_size must be at least 1");
  require_region(g, root, max_size);
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  ExpansionProfile p;
  p.mode = mode;
  p.max_size = max_size;
  p.min_boundary.assign(max_size + 1, kNone);
  p.set_counts.assign(max_size + 1, 0);
  enumerate_connected_sets(
      g, root, max_size,
      [&](const ConnectedSetView& s) {
        const auto k = s.members.size();
        ++p.set_counts[k];
        p.min_boundary[k] = std::min(p.min_boundary[k], boundary_of(s, mode));
      },
      budget);
  // On a finite complete graph, sizes beyond the component do not occur.
  std::size_t top = max_size;
  while (top > 1 && p.set_counts[top] == 0) --top;
  p.max_size = top;
  p.min_boundary.resize(top + 1);
  p.set_counts.resize(top + 1);
  p.f.assign(top + 1, 0.0);
  p.iota.assign(top + 1, 0.0);
  for (std::size_t k = 1; k <= top; ++k) p.f[k] = static_cast<double>(p.min_boundary[k]) / static_cast<double>(k);
  double tail = std::numeric_limits<double>::infinity();
  for (std::size_t n = top; n >= 1; --n) {
    tail = std::min(tail, p.f[n]);
    p.iota[n] = tail;
  }
  return p;
}

ExpansionProfile expansion_profile(const GraphOracle& oracle, std::size_t max_size, BoundaryMode mode,
                                   std::uint64_t budget) {
  const auto g = ball(oracle, oracle.basepoint(), static_cast<std::uint32_t>(max_size));
  return expansion_profile(g, g.index_of(oracle.basepoint()), max_size, mode, budget);
}

AnimalCounts animal_counts(const FiniteGraph& g, std::uint32_t root, std::size_t max_boundary, BoundaryMode mode,
                           std::optional<std::size_t> size_cap, std::uint64_t budget, bool ambient_is_tree) {
  if (max_boundary == 0) throw std::invalid_argument("max_boundary must be at least 1");
  const std::size_t cap = size_cap.value_or(max_boundary);
  if (cap == 0) throw std::invalid_argument("size cap must be at least 1");
  require_region(g, root, cap);
  AnimalCounts a;
  a.mode = mode;
  a.max_boundary = max_boundary;
  a.size_cap = cap;
  for (std::size_t n = 0; n <= max_boundary; ++n) a.counts[n] = 0;
  bool cap_reached = false;
  enumerate_connected_sets(
      g, root, cap,
      [&](const ConnectedSetView& s) {
        const auto n = boundary_of(s, mode);
        if (s.members.size() == cap) cap_reached = true;
        if (n > max_boundary) return;
        ++a.counts[n];
        if (s.members.size() == cap) a.unbounded_within_region = true;
      },
      budget);
  // A complete finite graph has no sets beyond those enumerated when the cap
  // was never reached or covers the whole graph.
  if (g.complete && (!cap_reached || cap >= g.size())) {
    a.unbounded_within_region = false;
    a.complete = true;
  } else {
    a.complete = !a.unbounded_within_region && (g.complete || ambient_is_tree) && leafless_tree_region(g, root);
  }
  return a;
}

AnimalCounts animal_counts(const GraphOracle& oracle, std::size_t max_boundary, BoundaryMode mode,
                           std::optional<std::size_t> size_cap, std::uint64_t budget) {
  const std::size_t cap = size_cap.value_or(max_boundary);
  const auto g = ball(oracle, oracle.basepoint(), static_cast<std::uint32_t>(cap));
  return animal_counts(g, g.index_of(oracle.basepoint()), max_boundary, mode, cap, budget, oracle_is_tree(oracle));
}

}  // namespace anchored
