#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "anchored/families.hpp"
#include "anchored/gw.hpp"
#include "anchored/stats.hpp"

using namespace anchored;

namespace {

std::map<std::string, std::uint64_t> shape_counts(std::uint64_t n, std::uint64_t seed,
                                                  const std::function<std::string(Rng&)>& draw) {
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t i = 0; i < n; ++i) {
    Rng rng(trial_seed(seed, i));
    ++counts[draw(rng)];
  }
  return counts;
}

}  // namespace

TEST(Offspring, ParseAndMoments) {
  const auto law = OffspringDistribution::parse("0.25,0,0.75");
  EXPECT_DOUBLE_EQ(law.mean(), 1.5);
  EXPECT_DOUBLE_EQ(law.generating_function(0.5), 0.25 + 0.75 * 0.25);
  EXPECT_EQ(law.sample(0.2), 0u);
  EXPECT_EQ(law.sample(0.3), 2u);
  EXPECT_THROW(OffspringDistribution::parse("0.5,0.6"), std::invalid_argument);
  EXPECT_THROW(OffspringDistribution::parse("0.5,-0.1,0.6"), std::invalid_argument);
  EXPECT_THROW(OffspringDistribution(std::vector<double>(66, 1.0 / 66)), std::invalid_argument);
}

TEST(Extinction, FixedPoints) {
  std::vector<double> iterates;
  const auto law = OffspringDistribution::parse("0.25,0,0.75");
  const double q = extinction_probability(law, 1e-14, &iterates);
  EXPECT_NEAR(q, 1.0 / 3.0, 1e-10);
  EXPECT_LT(std::abs(law.generating_function(q) - q), 1e-12);
  for (std::size_t i = 1; i < iterates.size(); ++i) {
    EXPECT_GE(iterates[i], iterates[i - 1]);
    EXPECT_LE(iterates[i], 1.0 / 3.0 + 1e-12);
  }
  // 0.5 s^2 - 0.7 s + 0.2 = 0 has roots 0.4 and 1.
  EXPECT_NEAR(extinction_probability(OffspringDistribution::parse("0.2,0.3,0.5")), 0.4, 1e-10);
  EXPECT_EQ(extinction_probability(OffspringDistribution::parse("0.5,0,0.5")), 1.0);
  EXPECT_EQ(extinction_probability(OffspringDistribution::parse("0.6,0.2,0.2")), 1.0);
  EXPECT_EQ(extinction_probability(OffspringDistribution::parse("0,0.3,0.7")), 0.0);
}

TEST(Backbone, LawsAndGap) {
  const auto dec = backbone_decompose(OffspringDistribution::parse("0.25,0,0.75"));
  EXPECT_NEAR(dec.backbone.prob(2), 1.0, 1e-12);
  EXPECT_EQ(dec.backbone.prob(0), 0.0);
  ASSERT_TRUE(dec.bush);
  EXPECT_NEAR(dec.bush->prob(0), 0.75, 1e-12);
  EXPECT_NEAR(dec.bush->prob(2), 0.25, 1e-12);
  EXPECT_NEAR(dec.gap_parameter, 2.0 / 3.0, 1e-12);

  const auto d2 = backbone_decompose(OffspringDistribution::parse("0.2,0.3,0.5"));
  EXPECT_NEAR(d2.backbone.prob(1), 0.3, 1e-12);
  EXPECT_NEAR(d2.backbone.prob(2), 0.7, 1e-12);
  EXPECT_NEAR(d2.bush->prob(0), 0.5, 1e-12);
  EXPECT_NEAR(d2.bush->prob(1), 0.3, 1e-12);
  EXPECT_NEAR(d2.bush->prob(2), 0.2, 1e-12);
  EXPECT_LT(d2.bush->mean(), 1.0);

  EXPECT_FALSE(backbone_decompose(OffspringDistribution::parse("0,0.5,0.5")).bush);
  EXPECT_THROW(backbone_decompose(OffspringDistribution::parse("0.5,0,0.5")), std::domain_error);
}

TEST(GwTree, SampleAgreesWithOracle) {
  const auto law = OffspringDistribution::parse("0.3,0.2,0.3,0.2");
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const GaltonWatsonOracle oracle(law, seed);
    const auto t = sample_tree(law, seed, 400);
    // Breadth-first child counts through the oracle.
    std::vector<std::uint32_t> counts;
    std::deque<VertexKey> q{oracle.basepoint()};
    while (!q.empty() && counts.size() < t.child_counts.size()) {
      const auto v = q.front();
      q.pop_front();
      const auto k = oracle.child_count(v);
      counts.push_back(static_cast<std::uint32_t>(k));
      const auto ns = oracle.neighbors(v);
      for (std::size_t i = ns.size() - k; i < ns.size(); ++i) q.push_back(ns[i]);
    }
    ASSERT_EQ(counts, t.child_counts) << seed;
    if (!t.truncated) {
      EXPECT_TRUE(q.empty());
    }
  }
}

TEST(GwTree, ShapesAndDepth) {
  PlaneTree t;
  t.child_counts = {2, 1, 0, 0};
  t.vertices = 4;
  EXPECT_EQ(tree_depth(t), 2u);
  EXPECT_EQ(depth_shape(t, 0), "");
  EXPECT_EQ(depth_shape(t, 1), "2");
  EXPECT_EQ(depth_shape(t, 2), "2,1,0");
  EXPECT_EQ(depth_shape(t, 5), "2,1,0,0");
}

TEST(GwTree, TotalProgenyBudget) {
  const auto law = OffspringDistribution::parse("0,0,1");
  Rng rng(1);
  EXPECT_FALSE(total_progeny(law, rng, 1000, 60));
  const auto dies = OffspringDistribution::parse("1");
  EXPECT_EQ(total_progeny(dies, rng, 1000, 60), std::optional<std::size_t>(1));
}

TEST(Bush, DirectSamplingMatchesRejection) {
  // Sizes of trees conditioned to die out, sampled two independent ways.
  const auto law = OffspringDistribution::parse("0.2,0.3,0.5");
  const auto tail = conditioned_finite_size_tail(law, 30000, 4);
  const auto rejected = rejection_finite_sizes(law, 60000, 5);
  std::map<std::string, std::uint64_t> a, b;
  for (const auto& [s, c] : tail.size_counts) a[std::to_string(std::min<std::size_t>(s, 25))] += c;
  for (const auto& [s, c] : rejected) b[std::to_string(std::min<std::size_t>(s, 25))] += c;
  const auto chi = chi_square_homogeneity(a, b);
  EXPECT_GT(chi.p_value, 0.001) << chi.statistic;
  EXPECT_LT(tail.log_tail_fit.slope, 0.0);
  EXPECT_NEAR(tail.bush_mean, 0.3 + 2 * 0.2, 1e-12);
}

TEST(Backbone, ReconstructionMatchesConditionedTree) {
  const auto law = OffspringDistribution::parse("0.2,0.3,0.5");
  const auto dec = backbone_decompose(law);
  const auto built = shape_counts(20000, 7, [&](Rng& r) { return sample_backbone_shape(dec, r, 3); });
  const auto direct = shape_counts(20000, 8, [&](Rng& r) { return sample_surviving_shape(law, r, 3, 60); });
  const auto chi = chi_square_homogeneity(built, direct);
  EXPECT_GT(chi.p_value, 0.001) << chi.statistic << " dof " << chi.dof;
}

TEST(StretchView, GeometricPathsReproduceTheTree) {
  const auto law = OffspringDistribution::parse("0,0.4,0.35,0.25");
  const auto view = geometric_stretch_view(law);
  EXPECT_NEAR(view.reduced.prob(2), 0.35 / 0.6, 1e-12);
  EXPECT_NEAR(std::get<GeometricLength>(view.nu).success, 0.6, 1e-12);
  const auto direct = shape_counts(20000, 9, [&](Rng& r) { return sample_direct_shape(law, r, 3); });
  const auto stretched = shape_counts(20000, 10, [&](Rng& r) { return sample_stretch_shape(view, r, 3); });
  EXPECT_GT(chi_square_homogeneity(direct, stretched).p_value, 0.001);
}

TEST(Stats, ChiSquareAndFits) {
  const auto good = chi_square_goodness({250, 250, 500}, {0.25, 0.25, 0.5});
  EXPECT_NEAR(good.statistic, 0.0, 1e-12);
  EXPECT_NEAR(good.p_value, 1.0, 1e-12);
  const auto bad = chi_square_goodness({400, 100, 500}, {0.25, 0.25, 0.5});
  EXPECT_LT(bad.p_value, 1e-10);
  const auto fit = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7.1});
  EXPECT_NEAR(fit.slope, 2.03, 1e-9);
  const auto ci = mean_ci({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(ci.mean, 2.5);
  EXPECT_NEAR(ci.stddev, std::sqrt(5.0 / 3.0), 1e-12);
  std::map<int, std::uint64_t> a{{1, 1}, {2, 1}}, b{{2, 1}, {3, 1}};
  EXPECT_DOUBLE_EQ(total_variation(a, b), 0.5);
}
