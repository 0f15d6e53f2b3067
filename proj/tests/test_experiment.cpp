#include <gtest/gtest.h>

#include "anchored/experiment.hpp"

using namespace anchored;

namespace {

ExperimentConfig config(std::string sub) {
  ExperimentConfig c;
  c.subcommand = std::move(sub);
  return c;
}

}  // namespace

TEST(Experiment, ConfigRoundTrip) {
  auto c = config("walk");
  c.family = "lamplighter";
  c.d = 3;
  c.p = 0.95;
  c.levels = {5, 10};
  c.size_cap = 7;
  c.ps = {0.1, 0.25};
  c.stretch_param = 0.1;
  const auto j = to_json(c);
  const auto back = config_from_json(Json::parse(j.dump()));
  EXPECT_EQ(to_json(back).dump(), j.dump());
  EXPECT_EQ(back.p, c.p);
  EXPECT_EQ(back.size_cap, c.size_cap);
  EXPECT_FALSE(config_from_json(to_json(config("gw"))).p);
}

TEST(Experiment, OutputsEmbedTheirConfig) {
  auto c = config("animals");
  c.family = "binary-rooted";
  c.max_boundary = 12;
  c.check_psi = 0.9;
  const auto r = run(c);
  EXPECT_TRUE(r.results["psi_check"]["all_pass"].get<bool>());
  EXPECT_EQ(r.results["counts"][11]["count"].get<std::uint64_t>(), 58786u);  // Catalan(11)
  const auto text = render(c, r);
  const auto parsed = Json::parse(text);
  EXPECT_EQ(to_json(config_from_json(parsed["config"])).dump(), to_json(c).dump());

  c.format = "csv";
  const auto csv = render(c, run(c));
  ASSERT_EQ(csv.rfind("# config=", 0), 0u);
  const auto first_nl = csv.find('\n');
  EXPECT_EQ(to_json(config_from_json(Json::parse(csv.substr(9, first_nl - 9)))).dump(), to_json(c).dump());
  EXPECT_EQ(csv.substr(first_nl + 1, csv.find('\n', first_nl + 1) - first_nl - 1), "n,count,bound_psi_h_pow_n,within");
}

TEST(Experiment, PayloadsIndependentOfWorkers) {
  auto c = config("percolate");
  c.family = "tree";
  c.ps = {0.45, 0.55, 0.6};
  c.trials = 300;
  c.budget = 3000;
  EXPECT_EQ(render(c, run(c, 1)), render(c, run(c, 3)));
  auto w = config("walk");
  w.family = "lamplighter";
  w.d = 2;
  w.p = 0.9;
  w.steps = 500;
  w.trials = 6;
  w.levels = {2, 4};
  EXPECT_EQ(render(w, run(w, 1)), render(w, run(w, 2)));
  auto g = config("gw");
  g.trials = 2000;
  EXPECT_EQ(render(g, run(g, 1)), render(g, run(g, 4)));
}

TEST(Experiment, ZeroTrialsGiveEmptyResults) {
  auto c = config("percolate");
  c.p = 0.5;
  c.trials = 0;
  const auto r = run(c);
  EXPECT_TRUE(r.results["histogram"].empty());
  auto w = config("walk");
  w.family = "lamplighter";
  w.trials = 0;
  EXPECT_TRUE(run(w).results["checkpoints"].empty());
}

TEST(Experiment, UsageErrors) {
  auto site = config("percolate");
  site.mode = "site";
  site.p = 0.5;
  EXPECT_THROW(run(site), UsageError);
  site.ps = {0.5};
  site.trials = 10;
  EXPECT_NO_THROW(run(site));

  auto walk = config("walk");
  walk.family = "tree";
  EXPECT_THROW(run(walk), UsageError);
  auto bad_family = config("expansion");
  bad_family.family = "moebius";
  EXPECT_THROW(run(bad_family), UsageError);
  EXPECT_THROW(run(config("nonsense")), UsageError);
  auto bad_law = config("stretch");
  bad_law.stretch_law = "zipf";
  EXPECT_THROW(run(bad_law), UsageError);
  auto no_p = config("percolate");
  EXPECT_THROW(run(no_p), UsageError);
  EXPECT_THROW(run(config("thresholds"), 0), UsageError);
}

TEST(Experiment, SubcommandsProduceTheirRows) {
  auto e = config("expansion");
  e.b = 2;
  e.max_size = 6;
  const auto r = run(e);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0][1], "3");

  auto d = config("dist");
  d.family = "lamplighter";
  d.marker = "3";
  d.lamps = "-2;3";
  const auto dr = run(d);
  EXPECT_EQ(dr.results["exact"].get<std::int64_t>(), 9);
  EXPECT_LE(dr.results["lower"].get<std::int64_t>(), 9);
  EXPECT_GE(dr.results["upper"].get<std::int64_t>(), 9);

  auto s = config("stretch");
  s.family = "binary-rooted";
  s.stretch_law = "geometric";
  s.edges = 5000;
  const auto sr = run(s);
  EXPECT_NEAR(sr.results["mean"].get<double>(), 2.0, 0.15);
  s.profile = true;
  s.max_size = 6;
  s.trials = 5;
  EXPECT_EQ(run(s).results["profile"].size(), 6u);

  auto t = config("thresholds");
  t.h = 1;
  EXPECT_EQ(run(t).results["psi"].get<double>(), 4.0);
}
