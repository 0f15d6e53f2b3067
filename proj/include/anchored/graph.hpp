#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anchored/prf.hpp"
#include "anchored/vertex_key.hpp"

namespace anchored {

// Immutable neighbor oracle for an implicit, possibly infinite, graph.
//
// Contract for every implementation: neighbors(v) is finite, duplicate-free,
// never contains v, and u in neighbors(v) iff v in neighbors(u). Malformed
// keys raise DecodeError. Implementations hold no mutable state and may be
// queried concurrently.
class GraphOracle {
 public:
  virtual ~GraphOracle() = default;

  virtual Family family() const = 0;
  virtual std::string describe() const = 0;
  virtual VertexKey basepoint() const = 0;

  virtual std::vector<VertexKey> neighbors(const VertexKey& v) const = 0;
  virtual std::size_t degree(const VertexKey& v) const { return neighbors(v).size(); }
  // i-th entry of neighbors(v).
  virtual VertexKey neighbor(const VertexKey& v, std::size_t i) const;

  // Throws DecodeError if v is not a vertex of this graph.
  virtual void validate(const VertexKey& v) const = 0;

  // Graph distance to basepoint(), when the family knows it in closed form.
  virtual std::optional<std::int64_t> distance_from_basepoint(const VertexKey&) const { return std::nullopt; }

  // 64-bit digests of canonical keys; percolation and stretch lengths are
  // keyed on these. The defaults fold the canonical bytes.
  virtual Fingerprint vertex_fingerprint(const VertexKey& v) const { return fingerprint_bytes(v.bytes); }
  virtual Fingerprint edge_fingerprint(const VertexKey& u, const VertexKey& v) const;

  virtual std::string format_vertex(const VertexKey& v) const;
};

using OraclePtr = std::shared_ptr<const GraphOracle>;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& budget_name, std::size_t budget)
      : std::runtime_error(budget_name + " budget of " + std::to_string(budget) + " exceeded"),
        budget_name_(budget_name),
        budget_(budget) {}
  const std::string& budget_name() const noexcept { return budget_name_; }
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::string budget_name_;
  std::size_t budget_;
};

// Explicit finite graph with vertices sorted by key.
struct FiniteGraph {
  std::vector<VertexKey> vertices;
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted neighbor indices
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, sorted
  std::vector<std::uint32_t> distance;  // from the center or root
  // Degree in the ambient oracle; equals adjacency[i].size() unless the
  // vertex sits on the truncation sphere.
  std::vector<std::uint32_t> ambient_degree;
  std::uint32_t radius = 0;
  // True when the graph is the whole connected component, not a truncation.
  bool complete = false;

  std::size_t size() const noexcept { return vertices.size(); }
  std::optional<std::uint32_t> find(const VertexKey& v) const;
  std::uint32_t index_of(const VertexKey& v) const;

  // Builds a standalone (complete) graph on vertices 0..n-1 with keys
  // finite_key(i); distances are BFS distances from `root`.
  static FiniteGraph from_edges(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                std::uint32_t root = 0);
};

FiniteGraph make_path_graph(std::uint32_t n);
FiniteGraph make_cycle_graph(std::uint32_t n);
// rows x cols window of Z^2, rooted at the vertex `root`.
FiniteGraph make_grid_graph(std::uint32_t rows, std::uint32_t cols, std::uint32_t root = 0);

inline constexpr std::size_t kDefaultBallBudget = 5'000'000;

// Induced subgraph on {x : dist(x, center) <= radius}. Throws BudgetExceeded
// naming the "ball vertex" budget when the ball is larger than `budget`.
FiniteGraph ball(const GraphOracle& oracle, const VertexKey& center, std::uint32_t radius,
                 std::size_t budget = kDefaultBallBudget);

}  // namespace anchored
