#include "anchored/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

namespace anchored {

VertexKey GraphOracle::neighbor(const VertexKey& v, std::size_t i) const {
  auto ns = neighbors(v);
  if (i >= ns.size()) throw std::out_of_range("neighbor index out of range");
  return std::move(ns[i]);
}

Fingerprint GraphOracle::edge_fingerprint(const VertexKey& u, const VertexKey& v) const {
  if (v < u) return combine_ordered(vertex_fingerprint(v), vertex_fingerprint(u));
  return combine_ordered(vertex_fingerprint(u), vertex_fingerprint(v));
}

std::string GraphOracle::format_vertex(const VertexKey& v) const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(family_name(v.family));
  out += ':';
  for (char c : v.bytes) {
    const auto b = static_cast<std::uint8_t>(c);
    out += kHex[b >> 4];
    out += kHex[b & 15];
  }
  return out;
}

std::optional<std::uint32_t> FiniteGraph::find(const VertexKey& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices.begin());
}

std::uint32_t FiniteGraph::index_of(const VertexKey& v) const {
  if (auto i = find(v)) return *i;
  throw std::out_of_range("vertex not in finite graph");
}

FiniteGraph FiniteGraph::from_edges(std::uint32_t n,
                                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edge_list,
                                    std::uint32_t root) {
  FiniteGraph g;
  g.vertices.reserve(n);
  // finite_key is big-endian, so index order equals key order.
  for (std::uint32_t i = 0; i < n; ++i) g.vertices.push_back(finite_key(i));
  g.adjacency.assign(n, {});
  for (auto [a, b] : edge_list) {
    if (a >= n || b >= n || a == b) throw std::invalid_argument("bad edge in finite graph");
    g.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
    throw std::invalid_argument("duplicate edge in finite graph");
  for (auto [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  g.ambient_degree.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) g.ambient_degree[i] = static_cast<std::uint32_t>(g.adjacency[i].size());

  constexpr auto kUnreached = std::numeric_limits<std::uint32_t>::max();
  g.distance.assign(n, kUnreached);
  if (n > 0) {
    if (root >= n) throw std::invalid_argument("root out of range");
    std::deque<std::uint32_t> queue{root};
    g.distance[root] = 0;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : g.adjacency[v]) {
        if (g.distance[w] == kUnreached) {
          g.distance[w] = g.distance[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  std::uint32_t r = 0;
  for (auto d : g.distance)
    if (d != kUnreached) r = std::max(r, d);
  g.radius = r;
  g.complete = true;
  return g;
}

FiniteGraph make_path_graph(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return FiniteGraph::from_edges(n, e);
}

FiniteGraph make_cycle_graph(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return FiniteGraph::from_edges(n, e);
}

FiniteGraph make_grid_graph(std::uint32_t rows, std::uint32_t cols, std::uint32_t root) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      const auto v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return FiniteGraph::from_edges(rows * cols, e, root);
}

FiniteGraph ball(const GraphOracle& oracle, const VertexKey& center, std::uint32_t radius, std::size_t budget) {
  oracle.validate(center);
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> dist;
  std::vector<VertexKey> order;
  std::unordered_map<VertexKey, std::vector<VertexKey>, VertexKeyHash> nbrs;
  dist.emplace(center, 0);
  order.push_back(center);
  bool truncated = false;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexKey v = order[head];
    const auto dv = dist.at(v);
    auto ns = oracle.neighbors(v);
    for (const auto& w : ns) {
      if (dist.contains(w)) continue;
      if (dv == radius) {
        truncated = true;
        continue;
      }
      if (order.size() >= budget) throw BudgetExceeded("ball vertex", budget);
      dist.emplace(w, dv + 1);
      order.push_back(w);
    }
    nbrs.emplace(v, std::move(ns));
  }

  FiniteGraph g;
  g.vertices = order;
  std::sort(g.vertices.begin(), g.vertices.end());
  const auto n = g.vertices.size();
  g.adjacency.assign(n, {});
  g.distance.resize(n);
  g.ambient_degree.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& v = g.vertices[i];
    g.distance[i] = dist.at(v);
    const auto& ns = nbrs.at(v);
    g.ambient_degree[i] = static_cast<std::uint32_t>(ns.size());
    for (const auto& w : ns) {
      if (auto j = g.find(w)) {
        g.adjacency[i].push_back(*j);
        if (i < *j) g.edges.emplace_back(i, *j);
      }
    }
    std::sort(g.adjacency[i].begin(), g.adjacency[i].end());
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.radius = radius;
  g.complete = !truncated;
  return g;
}

}  // namespace anchored
