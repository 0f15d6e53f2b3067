#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchored/graph.hpp"

namespace anchored {

using Json = nlohmann::ordered_json;

// Bad flags or flag combinations; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Everything that determines an experiment's results. Serialized verbatim
// into every output; the worker count is deliberately absent because results
// never depend on it.
struct ExperimentConfig {
  std::string subcommand;

  // Graph family.
  std::string family = "tree";  // lattice, tree, binary-rooted, path, cycle, grid, lamplighter, gw
  std::uint32_t d = 1;
  std::uint32_t b = 2;
  std::uint32_t n = 3;  // path and cycle length
  std::uint32_t rows = 3, cols = 3;
  std::string group = "z2";  // z<k> or a multiplication-table file
  std::string probs = "0.25,0,0.75";

  // Stretch law.
  std::string stretch_law;  // "", constant, geometric, power
  double stretch_param = 0.5;  // length, success probability or exponent
  std::uint64_t stretch_cap = 1000;

  // Percolation.
  std::optional<double> p;
  std::string mode = "bond";
  std::vector<double> ps;  // survival curve grid

  // Enumeration.
  std::size_t max_size = 8;
  std::size_t max_boundary = 8;
  std::optional<std::size_t> size_cap;
  std::string boundary = "edge";
  std::optional<double> check_psi;
  double h = 1.0;

  // Sampling.
  std::uint64_t trials = 1000;
  std::uint64_t steps = 1000;
  std::uint64_t budget = 100000;
  std::uint64_t step_cap = 10'000'000;
  std::vector<std::uint64_t> levels;  // exit-before-return ladder
  std::uint64_t edges = 100000;       // stretch length sample size
  std::uint64_t cluster_budget = 2000;  // walk start check
  bool profile = false;               // stretch: average expansion tails over seeds

  // Lamplighter state for `dist`.
  std::string marker = "0";
  std::string lamps;

  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

Json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);

// A result as JSON plus the same rows as a table for CSV output.
struct RunResult {
  Json results = Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Dispatches on config.subcommand. Throws UsageError for invalid
// combinations and other exceptions for runtime failures.
RunResult run(const ExperimentConfig& config, unsigned workers = 1);

// Single artifact text: JSON {"config", "results"}, or CSV with a
// "# config=<json>" line, a header row and data rows.
std::string render(const ExperimentConfig& config, const RunResult& result);

// Oracle for the family flags of `config`.
OraclePtr make_family(const ExperimentConfig& config);

std::string format_double(double x);

}  // namespace anchored
