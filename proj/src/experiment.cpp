#include "anchored/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "anchored/expansion.hpp"
#include "anchored/families.hpp"
#include "anchored/formulas.hpp"
#include "anchored/gw.hpp"
#include "anchored/lamplighter.hpp"
#include "anchored/lamplighter_metric.hpp"
#include "anchored/parallel.hpp"
#include "anchored/percolation.hpp"
#include "anchored/stats.hpp"
#include "anchored/stretch.hpp"
#include "anchored/walks.hpp"

namespace anchored {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// Doubles go through JSON as numbers when finite and as strings otherwise,
// so infinite tails (a set with no boundary) survive the round trip.
Json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string str(std::uint64_t v) { return std::to_string(v); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

StretchLaw make_stretch_law(const ExperimentConfig& c) {
  if (c.stretch_law == "constant") {
    if (c.stretch_param < 1 || c.stretch_param != std::floor(c.stretch_param)) {
      throw UsageError("constant stretch needs a positive integer --stretch-param");
    }
    return ConstantLength{static_cast<std::uint64_t>(c.stretch_param)};
  }
  if (c.stretch_law == "geometric") {
    if (!(c.stretch_param > 0 && c.stretch_param <= 1)) {
      throw UsageError("geometric stretch needs --stretch-param in (0, 1]");
    }
    return GeometricLength{c.stretch_param};
  }
  if (c.stretch_law == "power") {
    if (!(c.stretch_param > 1)) throw UsageError("power stretch needs --stretch-param > 1");
    if (c.stretch_cap == 0) throw UsageError("--stretch-cap must be positive");
    return TruncatedPowerLawLength{c.stretch_param, c.stretch_cap};
  }
  throw UsageError("unknown stretch law '" + c.stretch_law + "' (constant, geometric, power)");
}

FiniteGroupGraph make_group(const std::string& spec) {
  if (spec.size() > 1 && spec[0] == 'z' &&
      std::all_of(spec.begin() + 1, spec.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    const auto k = parse_int(spec.substr(1));
    if (k < 2) throw UsageError("lamp group z<k> needs k >= 2");
    return FiniteGroupGraph::cyclic(static_cast<std::uint32_t>(k));
  }
  return FiniteGroupGraph::load(spec);
}

OraclePtr make_base_family(const ExperimentConfig& c) {
  const auto& f = c.family;
  if (f == "lattice") {
    if (c.d == 0) throw UsageError("--d must be at least 1");
    return make_lattice(c.d);
  }
  if (f == "tree") {
    if (c.b == 0) throw UsageError("--b must be at least 1");
    return make_regular_tree(c.b);
  }
  if (f == "binary-rooted") return make_rooted_tree(2);
  if (f == "rooted-tree") {
    if (c.b == 0) throw UsageError("--b must be at least 1");
    return make_rooted_tree(c.b);
  }
  if (f == "path") return std::make_shared<FiniteGraphOracle>(make_path_graph(c.n), 0);
  if (f == "cycle") {
    if (c.n < 3) throw UsageError("a cycle needs --n >= 3");
    return std::make_shared<FiniteGraphOracle>(make_cycle_graph(c.n), 0);
  }
  if (f == "grid") {
    if (c.rows == 0 || c.cols == 0) throw UsageError("grid needs positive --rows and --cols");
    const std::uint32_t center = (c.rows / 2) * c.cols + c.cols / 2;
    return std::make_shared<FiniteGraphOracle>(make_grid_graph(c.rows, c.cols, center), center);
  }
  if (f == "lamplighter") {
    if (c.d == 0) throw UsageError("--d must be at least 1");
    return make_lamplighter(make_lattice(c.d), make_group(c.group));
  }
  if (f == "gw") return std::make_shared<GaltonWatsonOracle>(OffspringDistribution::parse(c.probs), c.seed);
  throw UsageError("unknown family '" + f + "'");
}

}  // namespace

OraclePtr make_family(const ExperimentConfig& c) {
  auto base = make_base_family(c);
  if (c.stretch_law.empty()) return base;
  return std::make_shared<StretchOracle>(std::move(base), StretchDescriptor(make_stretch_law(c), c.seed));
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["family"] = c.family;
  j["d"] = c.d;
  j["b"] = c.b;
  j["n"] = c.n;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["group"] = c.group;
  j["probs"] = c.probs;
  j["stretch_law"] = c.stretch_law;
  j["stretch_param"] = c.stretch_param;
  j["stretch_cap"] = c.stretch_cap;
  j["p"] = opt(c.p);
  j["mode"] = c.mode;
  j["ps"] = c.ps;
  j["max_size"] = c.max_size;
  j["max_boundary"] = c.max_boundary;
  j["size_cap"] = opt(c.size_cap);
  j["boundary"] = c.boundary;
  j["check_psi"] = opt(c.check_psi);
  j["h"] = c.h;
  j["trials"] = c.trials;
  j["steps"] = c.steps;
  j["budget"] = c.budget;
  j["step_cap"] = c.step_cap;
  j["levels"] = c.levels;
  j["edges"] = c.edges;
  j["cluster_budget"] = c.cluster_budget;
  j["profile"] = c.profile;
  j["marker"] = c.marker;
  j["lamps"] = c.lamps;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["format"] = c.format;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  auto take = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    using T = std::decay_t<decltype(field)>;
    if constexpr (requires { typename T::value_type; field.has_value(); }) {
      if (v.is_null()) {
        field.reset();
      } else {
        field = v.template get<typename T::value_type>();
      }
    } else {
      field = v.template get<T>();
    }
  };
  take("subcommand", c.subcommand);
  take("family", c.family);
  take("d", c.d);
  take("b", c.b);
  take("n", c.n);
  take("rows", c.rows);
  take("cols", c.cols);
  take("group", c.group);
  take("probs", c.probs);
  take("stretch_law", c.stretch_law);
  take("stretch_param", c.stretch_param);
  take("stretch_cap", c.stretch_cap);
  take("p", c.p);
  take("mode", c.mode);
  take("ps", c.ps);
  take("max_size", c.max_size);
  take("max_boundary", c.max_boundary);
  take("size_cap", c.size_cap);
  take("boundary", c.boundary);
  take("check_psi", c.check_psi);
  take("h", c.h);
  take("trials", c.trials);
  take("steps", c.steps);
  take("budget", c.budget);
  take("step_cap", c.step_cap);
  take("levels", c.levels);
  take("edges", c.edges);
  take("cluster_budget", c.cluster_budget);
  take("profile", c.profile);
  take("marker", c.marker);
  take("lamps", c.lamps);
  take("seed", c.seed);
  take("out", c.out);
  take("format", c.format);
  return c;
}

namespace {

BoundaryMode boundary_from(const ExperimentConfig& c) {
  try {
    return parse_boundary_mode(c.boundary);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

PercolationMode mode_from(const ExperimentConfig& c) {
  try {
    return parse_mode(c.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_p(double p) {
  if (!(p >= 0 && p <= 1)) throw UsageError("p must lie in [0, 1]");
}

RunResult run_expansion(const ExperimentConfig& c) {
  if (c.max_size == 0) throw UsageError("--max-size must be at least 1");
  const auto oracle = make_family(c);
  const auto prof = expansion_profile(*oracle, c.max_size, boundary_from(c));
  RunResult r;
  r.results["boundary"] = c.boundary;
  r.results["max_size"] = prof.max_size;
  r.header = {"k", "f_k", "iota_n", "min_boundary", "set_count"};
  Json rows = Json::array();
  for (std::size_t k = 1; k <= prof.max_size; ++k) {
    rows.push_back({{"k", k},
                    {"f_k", num(prof.f[k])},
                    {"iota_n", num(prof.iota[k])},
                    {"min_boundary", prof.min_boundary[k]},
                    {"set_count", prof.set_counts[k]}});
    r.rows.push_back({str(k), format_double(prof.f[k]), format_double(prof.iota[k]), str(prof.min_boundary[k]),
                      str(prof.set_counts[k])});
  }
  r.results["profile"] = std::move(rows);
  return r;
}

RunResult run_animals(const ExperimentConfig& c) {
  if (c.max_boundary == 0) throw UsageError("--max-boundary must be at least 1");
  if (c.check_psi && !(*c.check_psi > 0)) throw UsageError("--check-psi needs h > 0");
  const auto oracle = make_family(c);
  const auto a = animal_counts(*oracle, c.max_boundary, boundary_from(c), c.size_cap);
  RunResult r;
  r.results["boundary"] = c.boundary;
  r.results["size_cap"] = a.size_cap;
  r.results["complete"] = a.complete;
  r.results["unbounded_within_region"] = a.unbounded_within_region;
  r.header = {"n", "count"};
  if (c.check_psi) r.header.insert(r.header.end(), {"bound_psi_h_pow_n", "within"});

  Json rows = Json::array();
  bool all_pass = true;
  // Smallest n0 with the bound holding at every n0 <= n <= max_boundary.
  std::size_t n0 = c.max_boundary + 1;
  const double lpsi = c.check_psi ? log_psi(*c.check_psi) : 0.0;
  std::vector<bool> within(c.max_boundary + 1, true);
  if (c.check_psi) {
    for (std::size_t n = 1; n <= c.max_boundary; ++n) within[n] = within_psi_bound(a.count(n), n, *c.check_psi);
    for (std::size_t n = c.max_boundary; n >= 1 && within[n]; --n) n0 = n;
  }
  for (std::size_t n = 1; n <= c.max_boundary; ++n) {
    Json row = {{"n", n}, {"count", a.count(n)}};
    std::vector<std::string> csv = {str(n), str(a.count(n))};
    if (c.check_psi) {
      const double bound = std::exp(static_cast<double>(n) * lpsi);
      row["bound_psi_h_pow_n"] = num(bound);
      row["within"] = static_cast<bool>(within[n]);
      csv.push_back(format_double(bound));
      csv.push_back(within[n] ? "true" : "false");
      all_pass = all_pass && within[n];
    }
    rows.push_back(std::move(row));
    r.rows.push_back(std::move(csv));
  }
  r.results["counts"] = std::move(rows);
  if (c.check_psi) {
    r.results["psi_check"] = {{"h", *c.check_psi},
                              {"psi", psi(*c.check_psi)},
                              {"all_pass", all_pass},
                              {"n0", n0 <= c.max_boundary ? Json(n0) : Json(nullptr)}};
  }
  return r;
}

RunResult run_percolate(const ExperimentConfig& c, unsigned workers) {
  const auto mode = mode_from(c);
  const auto oracle = make_family(c);
  RunResult r;
  if (!c.ps.empty()) {
    for (double p : c.ps) check_p(p);
    const auto curve = survival_curve(*oracle, mode, c.ps, c.trials, c.budget, c.seed, workers);
    r.header = {"p", "survived", "trials", "frequency", "mean_finite_size"};
    Json rows = Json::array();
    for (const auto& pt : curve) {
      rows.push_back({{"p", pt.p},
                      {"survived", pt.survived},
                      {"trials", pt.trials},
                      {"frequency", pt.frequency()},
                      {"mean_finite_size", pt.mean_finite_size}});
      r.rows.push_back({format_double(pt.p), str(pt.survived), str(pt.trials), format_double(pt.frequency()),
                        format_double(pt.mean_finite_size)});
    }
    r.results["mode"] = c.mode;
    r.results["survival"] = std::move(rows);
    r.results["onset"] = opt(survival_onset(curve));
    return r;
  }
  // Boundary histograms count closed boundary edges, which only bond
  // percolation defines.
  if (mode != PercolationMode::kBond) throw UsageError("the boundary histogram is bond-only; use --ps for site mode");
  if (!c.p) throw UsageError("percolate needs --p or --ps");
  check_p(*c.p);
  const auto hist = boundary_tail_histogram(*oracle, *c.p, c.trials, c.budget, c.seed, workers);
  r.header = {"n", "count", "frequency"};
  Json rows = Json::array();
  std::vector<double> xs, ys;
  for (const auto& [n, count] : hist.finite_counts) {
    const double freq = hist.frequency(n);
    rows.push_back({{"n", n}, {"count", count}, {"frequency", freq}});
    r.rows.push_back({str(n), str(count), format_double(freq)});
    if (count >= 50) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(freq));
    }
  }
  r.results["p"] = *c.p;
  r.results["trials"] = hist.trials;
  r.results["survived"] = hist.survived;
  r.results["histogram"] = std::move(rows);
  if (xs.size() >= 3) {
    const auto fit = linear_fit(xs, ys);
    r.results["log_fit"] = {{"slope", fit.slope},
                            {"slope_lower", fit.slope_lower()},
                            {"slope_upper", fit.slope_upper()},
                            {"points", fit.n}};
  } else {
    r.results["log_fit"] = nullptr;
  }
  return r;
}

Json ci_json(const MeanCI& m) {
  return {{"mean", m.mean}, {"half_width", m.half_width}, {"lower", m.lower()}, {"upper", m.upper()}};
}

const LamplighterOracle& as_lamplighter(const OraclePtr& o) {
  const auto* w = dynamic_cast<const LamplighterOracle*>(o.get());
  if (!w) throw UsageError("this subcommand needs --family lamplighter");
  return *w;
}

RunResult run_walk(const ExperimentConfig& c, unsigned workers) {
  if (!c.stretch_law.empty()) throw UsageError("walk does not take a stretch law");
  const auto oracle = make_family(c);
  const auto& w = as_lamplighter(oracle);
  std::optional<PercolationConfig> perc;
  if (c.p) {
    check_p(*c.p);
    perc = PercolationConfig{*c.p, mode_from(c), 0};
  } else if (!c.levels.empty()) {
    throw UsageError("the exit-before-return ladder needs --p");
  }
  WalkOptions opts;
  opts.steps = c.steps;
  opts.cluster_budget = c.cluster_budget;
  const auto est = speed_estimate(w, perc, opts, c.trials, c.seed, workers);

  RunResult r;
  r.header = {"n", "mean_lower", "mean_upper", "mean_exact", "ci_lower", "ci_upper", "range_mean", "lamps_mean",
              "zeta_mean", "return_frequency"};
  Json rows = Json::array();
  for (const auto& row : est.rows) {
    Json j = {{"n", row.n}, {"mean_lower", row.lower.mean}, {"mean_upper", row.upper.mean}};
    if (row.exact) j["mean_exact"] = row.exact->mean;
    j["ci"] = {{"lower", ci_json(row.lower)}, {"upper", ci_json(row.upper)}};
    if (row.exact) j["ci"]["exact"] = ci_json(*row.exact);
    j["range_mean"] = row.range.mean;
    j["lamps_mean"] = row.lamps.mean;
    j["zeta_mean"] = row.regenerations.mean;
    j["zeta_ci"] = ci_json(row.regenerations);
    j["return_frequency"] = row.return_frequency;
    rows.push_back(std::move(j));
    r.rows.push_back({str(row.n), format_double(row.lower.mean), format_double(row.upper.mean),
                      row.exact ? format_double(row.exact->mean) : "", format_double(row.lower.lower()),
                      format_double(row.lower.upper()), format_double(row.range.mean), format_double(row.lamps.mean),
                      format_double(row.regenerations.mean), format_double(row.return_frequency)});
  }
  r.results["trials"] = est.trials;
  r.results["checkpoints"] = std::move(rows);
  r.results["resampled_trials"] = est.resampled_trials;

  if (!c.levels.empty()) {
    const auto ladder = exit_before_return(w, *perc, c.levels, c.trials, c.step_cap, c.seed, c.cluster_budget, workers);
    Json lrows = Json::array();
    for (const auto& row : ladder.rows) {
      lrows.push_back({{"level", row.level},
                       {"exits", row.exits},
                       {"returns", row.returns},
                       {"undecided", row.undecided},
                       {"trials", row.trials},
                       {"estimate", row.estimate()},
                       {"undecided_fraction", row.undecided_fraction()}});
    }
    r.results["exit_before_return"] = {{"rows", std::move(lrows)}, {"resampled_trials", ladder.resampled_trials}};
  }
  return r;
}

Json law_json(const OffspringDistribution& law) { return law.probs(); }

RunResult run_gw(const ExperimentConfig& c, unsigned workers) {
  const auto law = OffspringDistribution::parse(c.probs);
  RunResult r;
  const double q = extinction_probability(law);
  r.results["mean"] = law.mean();
  r.results["q"] = q;
  if (law.supercritical()) {
    const auto dec = backbone_decompose(law);
    r.results["backbone_law"] = law_json(dec.backbone);
    r.results["bush_law"] = dec.bush ? law_json(*dec.bush) : Json(nullptr);
    r.results["gap_parameter"] = dec.gap_parameter;
  } else {
    r.results["backbone_law"] = nullptr;
    r.results["bush_law"] = law_json(law);
    r.results["gap_parameter"] = nullptr;
  }

  // Extinction frequency: a tree counts as surviving once it outgrows the
  // vertex budget or a generation holds more than 60 vertices (it then dies
  // out with probability at most q^60).
  std::vector<std::uint8_t> died(c.trials, 0);
  parallel_for(c.trials, workers, [&](std::uint64_t i) {
    Rng rng(trial_seed(c.seed, i));
    died[i] = total_progeny(law, rng, c.budget, 60) ? 1 : 0;
  });
  const auto extinct = static_cast<std::uint64_t>(std::count(died.begin(), died.end(), 1));
  r.results["extinction_frequency"] =
      c.trials ? Json(static_cast<double>(extinct) / static_cast<double>(c.trials)) : Json(nullptr);

  r.header = {"s", "tail"};
  Json tail = Json::array();
  if (q > 0 && c.trials > 0) {
    const auto st = conditioned_finite_size_tail(law, c.trials, c.seed, c.budget, 50, workers);
    for (const auto& [s, t] : st.tail) {
      tail.push_back({{"s", s}, {"tail", t}});
      r.rows.push_back({str(s), format_double(t)});
    }
    r.results["size_tail_slope"] = st.log_tail_fit.n >= 2 ? Json(st.log_tail_fit.slope) : Json(nullptr);
    r.results["size_tail_truncated"] = st.truncated;
  }
  r.results["size_tail"] = std::move(tail);
  return r;
}

// Fingerprints of the first `count` edges met by a breadth-first search of
// the base graph (all of its edges when it has fewer). An edge is taken when
// its first endpoint is expanded, so each one is counted once.
std::vector<Fingerprint> bfs_edge_fingerprints(const GraphOracle& g, std::uint64_t count) {
  std::vector<Fingerprint> out;
  std::unordered_set<VertexKey, VertexKeyHash> seen{g.basepoint()}, expanded;
  std::deque<VertexKey> queue{g.basepoint()};
  while (!queue.empty() && out.size() < count) {
    auto v = std::move(queue.front());
    queue.pop_front();
    for (auto& u : g.neighbors(v)) {
      if (expanded.contains(u)) continue;
      out.push_back(g.edge_fingerprint(v, u));
      if (out.size() == count) break;
      if (seen.insert(u).second) queue.push_back(std::move(u));
    }
    expanded.insert(std::move(v));
  }
  return out;
}

RunResult run_stretch(const ExperimentConfig& c, unsigned workers) {
  if (c.stretch_law.empty()) throw UsageError("stretch needs --stretch-law");
  const auto law = make_stretch_law(c);
  const StretchDescriptor desc(law, c.seed);
  auto base_cfg = c;
  base_cfg.stretch_law.clear();
  const auto base = make_family(base_cfg);

  RunResult r;
  const auto fps = bfs_edge_fingerprints(*base, c.edges);
  std::map<std::uint64_t, std::uint64_t> counts;
  std::vector<double> lengths;
  lengths.reserve(fps.size());
  for (auto fp : fps) {
    const auto l = stretch_length(desc, fp);
    ++counts[l];
    lengths.push_back(static_cast<double>(l));
  }
  const auto m = mean_ci(lengths);
  r.results["law"] = desc.describe();
  r.results["edges"] = fps.size();
  r.results["mean"] = m.mean;
  r.results["mean_ci"] = ci_json(m);
  r.results["law_mean"] = desc.mean();
  Json pmf = Json::array();
  for (std::uint64_t l = 1; l <= 10; ++l) {
    const double freq = fps.empty() ? 0.0 : static_cast<double>(counts[l]) / static_cast<double>(fps.size());
    pmf.push_back({{"l", l}, {"frequency", freq}, {"pmf", desc.pmf(l)}});
  }
  r.results["pmf"] = std::move(pmf);

  if (!c.profile) {
    r.header = {"l", "frequency", "pmf"};
    for (const auto& row : r.results["pmf"]) {
      r.rows.push_back({str(row["l"].get<std::uint64_t>()), format_double(row["frequency"].get<double>()),
                        format_double(row["pmf"].get<double>())});
    }
    return r;
  }

  // Expansion tails averaged over stretch seeds trial_seed(seed, i).
  if (c.max_size == 0) throw UsageError("--max-size must be at least 1");
  if (c.trials == 0) throw UsageError("--profile needs --trials >= 1");
  const auto mode = boundary_from(c);
  std::vector<ExpansionProfile> profiles(c.trials);
  parallel_for(c.trials, workers, [&](std::uint64_t i) {
    const StretchOracle g(base, StretchDescriptor(law, trial_seed(c.seed, i)));
    profiles[i] = expansion_profile(g, c.max_size, mode);
  });
  std::size_t top = c.max_size;
  for (const auto& p : profiles) top = std::min(top, p.max_size);
  r.header = {"n", "iota_mean", "iota_half_width", "f_mean", "f_half_width"};
  Json rows = Json::array();
  for (std::size_t n = 1; n <= top; ++n) {
    std::vector<double> iota, f;
    for (const auto& p : profiles) {
      iota.push_back(p.iota[n]);
      f.push_back(p.f[n]);
    }
    const auto ci = mean_ci(iota);
    const auto fci = mean_ci(f);
    rows.push_back({{"n", n},
                    {"iota_mean", ci.mean},
                    {"iota_half_width", ci.half_width},
                    {"f_mean", fci.mean},
                    {"f_half_width", fci.half_width}});
    r.rows.push_back({str(n), format_double(ci.mean), format_double(ci.half_width), format_double(fci.mean),
                      format_double(fci.half_width)});
  }
  r.results["profile"] = std::move(rows);
  return r;
}

std::vector<std::int64_t> parse_coords(const std::string& s, std::size_t d) {
  const auto parts = split(s, ',');
  if (parts.size() != d) throw UsageError("site '" + s + "' needs " + std::to_string(d) + " coordinates");
  std::vector<std::int64_t> out;
  for (const auto& p : parts) out.push_back(parse_int(p));
  return out;
}

// --marker "x,y" and --lamps "x,y[:g];..." with g defaulting to 1.
LampState parse_state(const ExperimentConfig& c, const LamplighterOracle& w) {
  LampState s;
  s.marker = lattice_key(parse_coords(c.marker, c.d));
  for (const auto& item : split(c.lamps, ';')) {
    const auto colon = item.find(':');
    const auto site = lattice_key(parse_coords(item.substr(0, colon), c.d));
    GroupElement g = 1;
    if (colon != std::string::npos) {
      const auto v = parse_int(item.substr(colon + 1));
      if (v < 0 || v >= static_cast<std::int64_t>(w.group().order())) throw UsageError("lamp value out of range");
      g = static_cast<GroupElement>(v);
    }
    s.set_lamp(site, g);
  }
  return s;
}

RunResult run_dist(const ExperimentConfig& c) {
  const auto oracle = make_family(c);
  const auto& w = as_lamplighter(oracle);
  const auto s = parse_state(c, w);
  const auto bounds = lamplighter_distance_bounds(w, s, c.budget);
  RunResult r;
  r.results["state"] = w.format_vertex(encode_lamp_state(s));
  r.results["lower"] = bounds.lower;
  r.results["upper"] = bounds.upper;
  std::optional<std::int64_t> exact;
  if (c.d == 1) exact = lamplighter_distance_d1(w, s);
  r.results["exact"] = opt(exact);
  r.header = {"lower", "upper", "exact"};
  r.rows.push_back({std::to_string(bounds.lower), std::to_string(bounds.upper), exact ? std::to_string(*exact) : ""});
  return r;
}

RunResult run_thresholds(const ExperimentConfig& c) {
  if (!(c.h > 0)) throw UsageError("--h must be positive");
  const auto t = thresholds(c.h);
  RunResult r;
  r.results["h"] = c.h;
  r.results["psi"] = psi(c.h);
  r.results["pc_bound"] = t.pc_bound;
  r.results["expansion_threshold"] = t.expansion_threshold;
  r.results["survival_threshold"] = t.survival_threshold;
  r.header = {"h", "psi", "pc_bound", "expansion_threshold", "survival_threshold"};
  r.rows.push_back({format_double(c.h), format_double(psi(c.h)), format_double(t.pc_bound),
                    format_double(t.expansion_threshold), format_double(t.survival_threshold)});
  return r;
}

}  // namespace

RunResult run(const ExperimentConfig& c, unsigned workers) {
  if (workers == 0) throw UsageError("--workers must be at least 1");
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  const auto& s = c.subcommand;
  if (s == "expansion") return run_expansion(c);
  if (s == "animals") return run_animals(c);
  if (s == "percolate") return run_percolate(c, workers);
  if (s == "walk") return run_walk(c, workers);
  if (s == "gw") return run_gw(c, workers);
  if (s == "stretch") return run_stretch(c, workers);
  if (s == "dist") return run_dist(c);
  if (s == "thresholds") return run_thresholds(c);
  throw UsageError("unknown subcommand '" + s + "'");
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::string render(const ExperimentConfig& config, const RunResult& result) {
  if (config.format == "csv") {
    std::string out = "# config=" + to_json(config).dump() + "\n";
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(cells[i]);
      }
      out += '\n';
    };
    line(result.header);
    for (const auto& row : result.rows) line(row);
    return out;
  }
  Json j;
  j["config"] = to_json(config);
  j["results"] = result.results;
  return j.dump(2) + "\n";
}

}  // namespace anchored
