#pragma once

#include <string>
#include <vector>

#include "anchored/families.hpp"
#include "anchored/graph.hpp"
#include "oracles.hpp"

namespace anchored::testing {

struct CorpusGraph {
  std::string name;
  FiniteGraph graph;
  std::uint32_t root;
  std::vector<std::uint32_t> ambient_degree;
};

// Small graphs for exhaustive oracle comparisons; all have at most 12
// vertices. Balls are truncations, so their edge boundaries use the ambient
// degree of the infinite graph.
inline std::vector<CorpusGraph> small_corpus() {
  std::vector<CorpusGraph> out;
  auto add_complete = [&](std::string name, FiniteGraph g, std::uint32_t root) {
    std::vector<std::uint32_t> deg;
    for (const auto& a : g.adjacency) deg.push_back(static_cast<std::uint32_t>(a.size()));
    out.push_back({std::move(name), std::move(g), root, std::move(deg)});
  };
  auto add_ball = [&](std::string name, const GraphOracle& o, std::uint32_t radius) {
    auto g = ball(o, o.basepoint(), radius);
    const auto root = g.index_of(o.basepoint());
    auto deg = oracle_degrees(o, g);
    out.push_back({std::move(name), std::move(g), root, std::move(deg)});
  };
  for (std::uint32_t n : {1u, 2u, 5u, 12u}) add_complete("path" + std::to_string(n), make_path_graph(n), 0);
  add_complete("path9-mid", make_path_graph(9), 4);
  for (std::uint32_t n : {3u, 4u, 7u, 12u}) add_complete("cycle" + std::to_string(n), make_cycle_graph(n), 0);
  add_complete("grid3x3", make_grid_graph(3, 3, 4), 4);
  add_complete("grid3x4", make_grid_graph(3, 4, 0), 0);
  add_complete("grid2x6", make_grid_graph(2, 6, 2), 2);
  // A cycle with a chord and a pendant path.
  add_complete("theta", FiniteGraph::from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}), 1);
  add_ball("T2-ball2", *make_regular_tree(2), 2);
  add_ball("rooted2-ball2", *make_rooted_tree(2), 2);
  add_ball("T3-ball1", *make_regular_tree(3), 1);
  add_ball("Z2-ball1", *make_lattice(2), 1);
  add_ball("Z1-ball5", *make_lattice(1), 5);
  add_ball("Z3-ball1", *make_lattice(3), 1);
  return out;
}

}  // namespace anchored::testing
