#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "anchored/graph.hpp"
#include "anchored/offspring.hpp"

namespace anchored {

// Z^d with nearest-neighbor edges. Neighbor order: +e_1, -e_1, +e_2, ...
class LatticeOracle final : public GraphOracle {
 public:
  explicit LatticeOracle(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }

  Family family() const override { return Family::kLattice; }
  std::string describe() const override;
  VertexKey basepoint() const override;
  std::vector<VertexKey> neighbors(const VertexKey& v) const override;
  std::size_t degree(const VertexKey& v) const override;
  VertexKey neighbor(const VertexKey& v, std::size_t i) const override;
  void validate(const VertexKey& v) const override;
  std::optional<std::int64_t> distance_from_basepoint(const VertexKey& v) const override;
  std::string format_vertex(const VertexKey& v) const override;

 private:
  std::size_t dimension_;
};

// Trees whose vertices are child-index paths from the root (one byte per
// step). Unrooted: T_b, the (b+1)-regular tree (root has b+1 children).
// Rooted: every vertex, the root included, has b children.
class TreeOracle final : public GraphOracle {
 public:
  TreeOracle(std::uint32_t branching, bool rooted);

  std::uint32_t branching() const noexcept { return branching_; }
  bool rooted() const noexcept { return rooted_; }
  std::uint32_t root_children() const noexcept { return rooted_ ? branching_ : branching_ + 1; }

  Family family() const override { return rooted_ ? Family::kRootedTree : Family::kRegularTree; }
  std::string describe() const override;
  VertexKey basepoint() const override;
  std::vector<VertexKey> neighbors(const VertexKey& v) const override;
  std::size_t degree(const VertexKey& v) const override;
  void validate(const VertexKey& v) const override;
  std::optional<std::int64_t> distance_from_basepoint(const VertexKey& v) const override;
  std::string format_vertex(const VertexKey& v) const override;

 private:
  std::uint32_t branching_;
  bool rooted_;
};

// Oracle over an explicit finite graph (finite_key indices); covers explicit
// finite rooted trees as well as paths, cycles and grid windows.
class FiniteGraphOracle final : public GraphOracle {
 public:
  FiniteGraphOracle(FiniteGraph graph, std::uint32_t root);

  const FiniteGraph& graph() const noexcept { return graph_; }

  Family family() const override { return Family::kFinite; }
  std::string describe() const override;
  VertexKey basepoint() const override;
  std::vector<VertexKey> neighbors(const VertexKey& v) const override;
  void validate(const VertexKey& v) const override;
  std::optional<std::int64_t> distance_from_basepoint(const VertexKey& v) const override;

 private:
  FiniteGraph graph_;
  std::uint32_t root_;
};

// Galton-Watson family tree, materialized lazily: the child count of a
// vertex is a pure function of (seed, vertex path), so nothing is cached and
// repeated queries agree.
class GaltonWatsonOracle final : public GraphOracle {
 public:
  GaltonWatsonOracle(OffspringDistribution law, std::uint64_t seed);

  const OffspringDistribution& law() const noexcept { return law_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t child_count(const VertexKey& v) const;

  Family family() const override { return Family::kGaltonWatson; }
  std::string describe() const override;
  VertexKey basepoint() const override;
  std::vector<VertexKey> neighbors(const VertexKey& v) const override;
  void validate(const VertexKey& v) const override;
  std::optional<std::int64_t> distance_from_basepoint(const VertexKey& v) const override;
  std::string format_vertex(const VertexKey& v) const override;

 private:
  std::size_t child_count_unchecked(std::string_view path) const;

  OffspringDistribution law_;
  std::uint64_t seed_;
};

std::shared_ptr<const LatticeOracle> make_lattice(std::size_t dimension);
std::shared_ptr<const TreeOracle> make_regular_tree(std::uint32_t b);
std::shared_ptr<const TreeOracle> make_rooted_tree(std::uint32_t b);

VertexKey tree_key(Family family, std::span<const std::uint8_t> path);

}  // namespace anchored
