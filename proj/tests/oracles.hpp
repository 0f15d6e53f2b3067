#pragma once

// Brute-force references shared by the unit and acceptance tests. They use
// nothing but the graph data and the oracle interface.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "anchored/enumeration.hpp"
#include "anchored/graph.hpp"

namespace anchored::testing {

// Every connected subset holding the root with |S| <= max_size, by filtering
// all 2^|V| subsets. Edge boundaries use the ambient degree reported by the
// oracle, vertex boundaries count outside neighbors present in the graph.
inline std::vector<ConnectedSet> brute_force_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size,
                                                  const std::vector<std::uint32_t>& ambient_degree) {
  const auto n = static_cast<std::uint32_t>(g.size());
  std::vector<ConnectedSet> out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (!(mask >> root & 1)) continue;
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size > max_size) continue;
    std::uint64_t seen = 1ULL << root;
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto u : g.adjacency[v]) {
        if ((mask >> u & 1) && !(seen >> u & 1)) {
          seen |= 1ULL << u;
          stack.push_back(u);
        }
      }
    }
    if (seen != mask) continue;
    ConnectedSet s;
    std::size_t internal_twice = 0, degree_sum = 0;
    std::uint64_t outside = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!(mask >> v & 1)) continue;
      s.members.push_back(v);
      degree_sum += ambient_degree[v];
      for (auto u : g.adjacency[v]) {
        if (mask >> u & 1) {
          ++internal_twice;
        } else {
          outside |= 1ULL << u;
        }
      }
    }
    s.edge_boundary = degree_sum - internal_twice;
    s.vertex_boundary = static_cast<std::size_t>(__builtin_popcountll(outside));
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::uint32_t> oracle_degrees(const GraphOracle& o, const FiniteGraph& g) {
  std::vector<std::uint32_t> d;
  for (const auto& v : g.vertices) d.push_back(static_cast<std::uint32_t>(o.degree(v)));
  return d;
}

// Breadth-first distances from `start` up to `radius` through the oracle.
inline std::unordered_map<VertexKey, std::int64_t, VertexKeyHash> bfs_distances(const GraphOracle& g,
                                                                                const VertexKey& start,
                                                                                std::int64_t radius) {
  std::unordered_map<VertexKey, std::int64_t, VertexKeyHash> dist{{start, 0}};
  std::deque<VertexKey> queue{start};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    const auto dv = dist.at(v);
    if (dv == radius) continue;
    for (const auto& u : g.neighbors(v)) {
      if (dist.emplace(u, dv + 1).second) queue.push_back(u);
    }
  }
  return dist;
}

}  // namespace anchored::testing
