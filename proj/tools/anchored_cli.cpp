// Command-line driver: one subcommand per experiment, one artifact per run.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "anchored/enumeration.hpp"
#include "anchored/experiment.hpp"

using namespace anchored;

namespace {

// Every subcommand accepts the full family and sampling vocabulary; the ones
// a subcommand ignores are still recorded in the embedded config.
void add_family_flags(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--family", c.family, "lattice|tree|binary-rooted|rooted-tree|path|cycle|grid|lamplighter|gw");
  sub->add_option("--d", c.d, "lattice or lamplighter base dimension");
  sub->add_option("--b", c.b, "tree branching number");
  sub->add_option("--n", c.n, "path or cycle length");
  sub->add_option("--rows", c.rows);
  sub->add_option("--cols", c.cols);
  sub->add_option("--group,--F", c.group, "lamp group: z<k> or a table file");
  sub->add_option("--probs", c.probs, "offspring law p_0,p_1,...");
  sub->add_option("--stretch-law", c.stretch_law, "constant|geometric|power");
  sub->add_option("--stretch-param", c.stretch_param, "length, success probability or exponent");
  sub->add_option("--stretch-cap", c.stretch_cap, "power-law length cap");
}

void add_percolation_flags(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--p", c.p, "open probability");
  sub->add_option("--mode", c.mode, "bond|site");
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig c;
  unsigned workers = 1;
  CLI::App app{"Anchored expansion, percolation and lamplighter walk experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c.seed, "master seed");
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", workers, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);

  auto* expansion = app.add_subcommand("expansion", "exact f(k) and iota_n profile around the basepoint");
  add_family_flags(expansion, c);
  expansion->add_option("--max-size", c.max_size);
  expansion->add_option("--boundary", c.boundary, "edge|vertex");

  auto* animals = app.add_subcommand("animals", "counts of connected sets by boundary size");
  add_family_flags(animals, c);
  animals->add_option("--max-boundary", c.max_boundary);
  animals->add_option("--size-cap", c.size_cap);
  animals->add_option("--boundary", c.boundary, "edge|vertex");
  animals->add_option("--check-psi", c.check_psi, "compare counts with Psi(h)^n");

  auto* percolate = app.add_subcommand("percolate", "boundary histogram at --p, or survival curve over --ps");
  add_family_flags(percolate, c);
  add_percolation_flags(percolate, c);
  percolate->add_option("--ps", c.ps, "comma-separated p grid")->delimiter(',');
  percolate->add_option("--trials", c.trials);
  percolate->add_option("--budget", c.budget, "cluster vertex budget");

  auto* walk = app.add_subcommand("walk", "lamplighter walk speed statistics");
  add_family_flags(walk, c);
  add_percolation_flags(walk, c);
  walk->add_option("--steps", c.steps);
  walk->add_option("--trials", c.trials);
  std::string checkpoints = "geometric";
  walk->add_option("--checkpoints", checkpoints)->check(CLI::IsMember({"geometric"}));
  walk->add_option("--levels", c.levels, "exit-before-return ladder, comma-separated")->delimiter(',');
  walk->add_option("--step-cap", c.step_cap);
  walk->add_option("--cluster-budget", c.cluster_budget);

  auto* gw = app.add_subcommand("gw", "Galton-Watson extinction, backbone and bush laws");
  gw->add_option("--probs", c.probs);
  gw->add_option("--trials", c.trials);
  gw->add_option("--budget", c.budget, "tree vertex budget");

  auto* stretch = app.add_subcommand("stretch", "edge-length statistics and stretched expansion tails");
  add_family_flags(stretch, c);
  stretch->add_option("--edges", c.edges, "edges sampled for the length statistics");
  stretch->add_flag("--profile", c.profile, "average iota_n over --trials stretch seeds");
  stretch->add_option("--max-size", c.max_size);
  stretch->add_option("--trials", c.trials);
  stretch->add_option("--boundary", c.boundary, "edge|vertex");

  auto* dist = app.add_subcommand("dist", "lamplighter word distance and bounds");
  add_family_flags(dist, c);
  dist->add_option("--marker", c.marker, "marker coordinates x,y,...");
  dist->add_option("--lamps", c.lamps, "lit sites x,y[:g];...");
  dist->add_option("--budget", c.budget, "search budget for the upper bound");

  auto* thr = app.add_subcommand("thresholds", "Psi(h) and the percolation thresholds it implies");
  thr->set_help_flag("--help", "Print this help message and exit");  // frees -h
  thr->add_option("--h", c.h);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: kind=usage reason=" << e.what() << "\n";
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.subcommand == "gw") c.family = "gw";

  try {
    const auto result = run(c, workers);
    const auto text = render(c, result);
    if (c.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(c.out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open '" + c.out + "' for writing");
      out << text;
      if (!out.flush()) throw std::runtime_error("write to '" + c.out + "' failed");
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: kind=usage reason=" << e.what() << "\n";
    return 2;
  } catch (const EnumerationBudgetExceeded& e) {
    std::cerr << "error: kind=budget reason=" << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: kind=budget reason=" << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error: bad values that passed flag parsing.
    std::cerr << "error: kind=invalid reason=" << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=runtime reason=" << e.what() << "\n";
    return 1;
  }
}
