#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anchored/offspring.hpp"
#include "anchored/stats.hpp"
#include "anchored/stretch.hpp"

namespace anchored {

// Smallest fixed point of the generating function on [0,1], by the monotone
// iteration s_{n+1} = f(s_n) from s_0 = 0, stopped once successive iterates
// differ by less than tol. Returns 1 for mean <= 1 and 0 when p_0 = 0. When
// `iterates` is given it receives s_0, s_1, ...
double extinction_probability(const OffspringDistribution& law, double tol = 1e-14,
                              std::vector<double>* iterates = nullptr);

// Split of a supercritical tree into the leafless backbone of vertices with
// infinite lines of descent and the finite bushes hanging off it.
struct BackboneDecomposition {
  double q = 0.0;
  OffspringDistribution backbone;             // P(Y=k) = p_k (1-q^k)/(1-q)
  std::optional<OffspringDistribution> bush;  // p_k q^(k-1); absent when q = 0
  double gap_parameter = 1.0;                 // 1 - q, chance a child is on the backbone
};

// Throws std::domain_error when the law is not supercritical.
BackboneDecomposition backbone_decompose(const OffspringDistribution& law, double tol = 1e-14);

// Plane tree stored as child counts in breadth-first order. A truncated tree
// lists counts only for the vertices expanded before the budget ran out, so
// child_counts may be shorter than `vertices`.
struct PlaneTree {
  std::vector<std::uint32_t> child_counts;
  std::size_t vertices = 0;
  bool truncated = false;

  std::size_t size() const noexcept { return vertices; }
};

// The tree of GaltonWatsonOracle(law, seed): the child count of each vertex
// is drawn from the PRF keyed by its path, so both agree vertex by vertex.
// Generation stops once max_vertices vertices exist.
PlaneTree sample_tree(const OffspringDistribution& law, std::uint64_t seed, std::size_t max_vertices);

std::size_t tree_depth(const PlaneTree& t);

// Breadth-first child counts of all vertices at depth < depth, joined with
// commas; "" for depth 0. Two plane trees agree up to that depth iff their
// shape strings agree.
std::string depth_shape(const PlaneTree& t, std::size_t depth);

// Total progeny, or nullopt when the tree exceeds `budget` vertices or some
// generation exceeds `population_cap` (treated as surviving).
std::optional<std::size_t> total_progeny(const OffspringDistribution& law, Rng& rng, std::size_t budget,
                                         std::size_t population_cap);

struct SizeTail {
  std::uint64_t trials = 0;
  std::uint64_t truncated = 0;           // trials that hit the size budget
  std::map<std::size_t, std::uint64_t> size_counts;
  std::vector<std::pair<std::size_t, double>> tail;  // (s, P(|T| >= s))
  LinearFit log_tail_fit;  // log P(|T| >= s) against s, over the rows with >= min_count trials
  double bush_mean = 0.0;
};

// Trees conditioned on extinction, sampled directly from the bush law.
SizeTail conditioned_finite_size_tail(const OffspringDistribution& law, std::uint64_t trials, std::uint64_t seed,
                                      std::size_t size_budget = 100000, std::uint64_t min_count = 50,
                                      unsigned workers = 1);

// Reference sample for the bush law: sizes of unconditioned trees that die
// out, with surviving trees (over the budget or population cap) dropped.
std::map<std::size_t, std::uint64_t> rejection_finite_sizes(const OffspringDistribution& law, std::uint64_t trials,
                                                            std::uint64_t seed, std::size_t size_budget = 100000,
                                                            std::size_t population_cap = 60, unsigned workers = 1);

// Tree with p_0 = 0 and 0 < p_1 < 1 seen as a stretched tree: the reduced
// law p'_k = p_k/(1-p_1) for k >= 2 and path lengths with P(L = l) =
// p_1^(l-1) (1-p_1), that is GeometricLength{success = 1 - p_1}. The root
// also sits on top of a stem of L_0 - 1 single-child vertices, L_0 ~ nu.
// p_1 = 0 gives the identity with Constant(1).
struct StretchView {
  OffspringDistribution reduced;
  StretchLaw nu;
};

StretchView geometric_stretch_view(const OffspringDistribution& law);

// Depth-limited shapes of the three constructions compared in tests.
// Direct Galton-Watson tree cut at `depth`.
std::string sample_direct_shape(const OffspringDistribution& law, Rng& rng, std::size_t depth);
// Stretch construction for p_0 = 0.
std::string sample_stretch_shape(const StretchView& view, Rng& rng, std::size_t depth);
// Backbone construction for p_0 > 0: open vertices draw Y from the backbone
// law, each child is open with probability 1-q and the draw is discarded and
// repeated when every child came out closed; closed vertices root bush trees.
std::string sample_backbone_shape(const BackboneDecomposition& dec, Rng& rng, std::size_t depth);

// Direct Galton-Watson tree conditioned on survival, approximated by some
// generation exceeding population_cap (the error is at most q^population_cap).
// Resamples until a surviving tree appears; `rejected` counts the discards.
std::string sample_surviving_shape(const OffspringDistribution& law, Rng& rng, std::size_t depth,
                                   std::size_t population_cap, std::uint64_t* rejected = nullptr);

}  // namespace anchored
