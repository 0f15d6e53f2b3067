#include "anchored/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace anchored {

FiniteGroupGraph::FiniteGroupGraph(std::vector<std::vector<GroupElement>> table,
                                   std::vector<GroupElement> generators)
    : table_(std::move(table)), generators_(std::move(generators)) {
  const std::size_t k = table_.size();
  if (k == 0) throw std::invalid_argument("group order must be positive");
  for (const auto& row : table_) {
    if (row.size() != k) throw std::invalid_argument("multiplication table is not square");
    for (auto e : row)
      if (e >= k) throw std::invalid_argument("multiplication table entry out of range");
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (table_[0][a] != a || table_[a][0] != a)
      throw std::invalid_argument("element 0 is not the identity");
  }
  std::vector<char> seen(k);
  for (std::size_t a = 0; a < k; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < k; ++b) {
      if (seen[table_[a][b]]++) throw std::invalid_argument("multiplication table row is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < k; ++b) {
      if (seen[table_[b][a]]++) throw std::invalid_argument("multiplication table column is not a permutation");
    }
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("multiplication table is not associative");

  inverse_.assign(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (table_[a][b] == 0) inverse_[a] = static_cast<GroupElement>(b);

  if (k > 1 && generators_.empty()) throw std::invalid_argument("nontrivial group needs generators");
  std::vector<GroupElement> sorted = generators_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate generator");
  for (auto g : generators_) {
    if (g >= k) throw std::invalid_argument("generator out of range");
    if (g == 0) throw std::invalid_argument("identity cannot be a generator");
    if (!std::binary_search(sorted.begin(), sorted.end(), inverse_[g]))
      throw std::invalid_argument("generator set is not closed under inverse");
  }

  norm_.assign(k, std::numeric_limits<std::uint32_t>::max());
  norm_[0] = 0;
  std::deque<GroupElement> queue{0};
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const auto b = neighbor(a, i);
      if (norm_[b] == std::numeric_limits<std::uint32_t>::max()) {
        norm_[b] = norm_[a] + 1;
        queue.push_back(b);
      }
    }
  }
  for (auto n : norm_)
    if (n == std::numeric_limits<std::uint32_t>::max())
      throw std::invalid_argument("Cayley graph is not connected");
}

FiniteGroupGraph FiniteGroupGraph::cyclic(std::uint32_t k) {
  if (k < 2) throw std::invalid_argument("cyclic group needs order >= 2");
  std::vector<std::vector<GroupElement>> table(k, std::vector<GroupElement>(k));
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) table[a][b] = (a + b) % k;
  std::vector<GroupElement> gens{1};
  if (k > 2) gens.push_back(k - 1);
  return FiniteGroupGraph(std::move(table), std::move(gens));
}

FiniteGroupGraph FiniteGroupGraph::parse(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    throw std::invalid_argument("group file truncated");
  };
  std::size_t k = 0;
  {
    std::istringstream ls(next_line());
    if (!(ls >> k) || k == 0) throw std::invalid_argument("group file: bad order line");
  }
  std::vector<std::vector<GroupElement>> table(k, std::vector<GroupElement>(k));
  for (std::size_t a = 0; a < k; ++a) {
    std::istringstream ls(next_line());
    for (std::size_t b = 0; b < k; ++b) {
      long long v = 0;
      if (!(ls >> v) || v < 0) throw std::invalid_argument("group file: bad table row");
      table[a][b] = static_cast<GroupElement>(v);
    }
  }
  std::vector<GroupElement> gens;
  if (k > 1) {
    std::istringstream ls(next_line());
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw std::invalid_argument("group file: bad generator");
      gens.push_back(static_cast<GroupElement>(v));
    }
  }
  return FiniteGroupGraph(std::move(table), std::move(gens));
}

FiniteGroupGraph FiniteGroupGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group file: " + path);
  return parse(in);
}

}  // namespace anchored
