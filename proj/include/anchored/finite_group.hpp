#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace anchored {

using GroupElement = std::uint32_t;

// Cayley graph of a finite group given by its full multiplication table.
// Element 0 is the identity; adjacency is right multiplication by a generator.
class FiniteGroupGraph {
 public:
  // Validates the table (identity, Latin square, associativity) and the
  // generator set (symmetric, identity-free, generating). Throws
  // std::invalid_argument on any violation.
  FiniteGroupGraph(std::vector<std::vector<GroupElement>> table, std::vector<GroupElement> generators);

  // Z_k with generators {1, k-1} (just {1} for k = 2).
  static FiniteGroupGraph cyclic(std::uint32_t k);

  // Text format: order k, then k rows of k entries, then one line of
  // generator indices.
  static FiniteGroupGraph parse(std::istream& in);
  static FiniteGroupGraph load(const std::string& path);

  std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(table_.size()); }
  static constexpr GroupElement identity() noexcept { return 0; }
  GroupElement multiply(GroupElement a, GroupElement b) const { return table_[a][b]; }
  GroupElement inverse(GroupElement a) const { return inverse_[a]; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }

  // a * generators()[i]
  GroupElement neighbor(GroupElement a, std::size_t i) const { return table_[a][generators_[i]]; }

  // Word length |a|_F: graph distance from the identity (BFS at construction).
  std::uint32_t norm(GroupElement a) const { return norm_[a]; }

  const std::vector<std::vector<GroupElement>>& table() const noexcept { return table_; }

 private:
  std::vector<std::vector<GroupElement>> table_;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> inverse_;
  std::vector<std::uint32_t> norm_;
};

}  // namespace anchored
