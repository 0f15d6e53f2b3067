#include <gtest/gtest.h>

#include <cmath>

#include "anchored/enumeration.hpp"
#include "anchored/families.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace anchored;
using namespace anchored::testing;

TEST(Enumeration, MatchesBruteForceOnCorpus) {
  for (const auto& c : small_corpus()) {
    ASSERT_LE(c.graph.size(), 12u) << c.name;
    for (std::size_t k : {std::size_t{1}, std::size_t{3}, c.graph.size()}) {
      const auto got = collect_connected_sets(c.graph, c.root, k);
      const auto want = brute_force_sets(c.graph, c.root, k, c.ambient_degree);
      ASSERT_EQ(got, want) << c.name << " max_size " << k;
    }
  }
}

TEST(Enumeration, EverySetVisitedOnceFromAnyRoot) {
  const auto g = make_grid_graph(3, 4, 0);
  std::vector<std::uint32_t> deg;
  for (const auto& a : g.adjacency) deg.push_back(static_cast<std::uint32_t>(a.size()));
  for (std::uint32_t root = 0; root < g.size(); ++root) {
    std::uint64_t visits = 0;
    enumerate_connected_sets(g, root, 12, [&](const ConnectedSetView&) { ++visits; });
    EXPECT_EQ(visits, brute_force_sets(g, root, 12, deg).size());
  }
}

TEST(Enumeration, CountsOnTreeMatchClosedForm) {
  // A subtree of T_2 holding the root splits into the root and three
  // possibly empty branches, each a subtree of a rooted binary tree; those
  // are counted by Catalan numbers.
  const auto t2 = make_regular_tree(2);
  const auto g = ball(*t2, t2->basepoint(), 8);
  std::vector<std::uint64_t> got(9, 0);
  enumerate_connected_sets(g, g.index_of(t2->basepoint()), 8,
                           [&](const ConnectedSetView& s) { ++got[s.members.size()]; });
  // b(j): connected sets of size j holding the root of a rooted binary tree,
  // b(0) = 1 for the empty branch, b(j) = Catalan(j).
  const std::vector<std::uint64_t> b = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (std::size_t k = 1; k <= 8; ++k) {
    std::uint64_t want = 0;
    for (std::size_t i = 0; i + 1 <= k; ++i) {
      for (std::size_t j = 0; i + j + 1 <= k; ++j) want += b[i] * b[j] * b[k - 1 - i - j];
    }
    EXPECT_EQ(got[k], want) << k;
  }
}

TEST(Enumeration, BoundaryAnnotationsOnLattice) {
  // In Z^2, a single vertex has 4 boundary edges; a domino has 6.
  const auto z2 = make_lattice(2);
  const auto g = ball(*z2, z2->basepoint(), 3);
  const auto sets = collect_connected_sets(g, g.index_of(z2->basepoint()), 2);
  ASSERT_EQ(sets.size(), 5u);
  for (const auto& s : sets) {
    EXPECT_EQ(s.edge_boundary, s.members.size() == 1 ? 4u : 6u);
    EXPECT_EQ(s.vertex_boundary, s.members.size() == 1 ? 4u : 6u);
  }
}

TEST(Enumeration, BudgetAndEstimate) {
  const auto z2 = make_lattice(2);
  const auto g = ball(*z2, z2->basepoint(), 8);
  const auto root = g.index_of(z2->basepoint());
  std::uint64_t exact = 0;
  enumerate_connected_sets(g, root, 7, [&](const ConnectedSetView&) { ++exact; });
  // Fixed polyominoes of size <= 7 rooted at one cell: sum of k * A(k).
  const std::vector<std::uint64_t> fixed = {0, 1, 2, 6, 19, 63, 216, 760};
  std::uint64_t want = 0;
  for (std::size_t k = 1; k <= 7; ++k) want += k * fixed[k];
  EXPECT_EQ(exact, want);

  const double est = estimate_connected_sets(g, root, 7, 20000, 3);
  EXPECT_NEAR(est / static_cast<double>(exact), 1.0, 0.05);
  try {
    enumerate_connected_sets(g, root, 7, [](const ConnectedSetView&) {}, 1000);
    FAIL() << "budget not enforced";
  } catch (const EnumerationBudgetExceeded& e) {
    EXPECT_EQ(e.budget(), 1000u);
    EXPECT_GT(e.estimated_count(), 1000.0);
  }
}
