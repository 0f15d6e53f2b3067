// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Each check also returns a JSON payload of everything it
// measured; criterion 13 recomputes those payloads with another worker count
// and compares them byte for byte.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "anchored/expansion.hpp"
#include "anchored/experiment.hpp"
#include "anchored/families.hpp"
#include "anchored/formulas.hpp"
#include "anchored/gw.hpp"
#include "anchored/lamplighter_metric.hpp"
#include "anchored/parallel.hpp"
#include "anchored/percolation.hpp"
#include "anchored/stats.hpp"
#include "anchored/stretch.hpp"
#include "anchored/walks.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace anchored;

namespace {

constexpr std::uint64_t kMasterSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
  Json payload = Json::object();
};

using Check = std::function<Outcome(unsigned workers)>;

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Enumeration against brute-force subset filtering.
Outcome enumeration_oracle(unsigned) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t graphs = 0, sets = 0;
  bool all = true;
  std::string first_bad;
  for (const auto& c : testing::small_corpus()) {
    if (c.graph.size() > 12) continue;
    ++graphs;
    for (std::size_t k = 1; k <= c.graph.size(); ++k) {
      const auto got = collect_connected_sets(c.graph, c.root, k);
      const auto want = testing::brute_force_sets(c.graph, c.root, k, c.ambient_degree);
      if (got != want) {
        all = false;
        if (first_bad.empty()) first_bad = c.name + " k=" + std::to_string(k);
      }
      if (k == c.graph.size()) sets += got.size();
    }
    o.payload["graphs"][c.name] = sets;
  }
  const double secs = seconds_since(t0);
  o.pass = all && secs < 60;
  o.detail = std::to_string(graphs) + " graphs, " + std::to_string(sets) + " sets at full size, all max sizes" +
             (all ? "" : ", mismatch on " + first_bad) + ", " + fmt(secs, 3) + " s";
  return o;
}

// 2 and 3 share the counts.
AnimalCounts binary_counts() { return animal_counts(*make_rooted_tree(2), 12, BoundaryMode::kEdge); }

Outcome catalan_identity(unsigned) {
  Outcome o;
  const auto a = binary_counts();
  bool all = a.complete;
  for (std::uint32_t n = 2; n <= 12; ++n) {
    all = all && a.count(n) == catalan(n - 1);
    o.payload["counts"].push_back(a.count(n));
  }
  o.pass = all;
  o.detail = std::string("|A_n| = Catalan(n-1) for 2 <= n <= 12") + (all ? "" : " violated") +
             ", exactness certified: " + (a.complete ? "yes" : "no");
  return o;
}

Outcome psi_bound(unsigned) {
  Outcome o;
  const auto a = binary_counts();
  const double h = 0.9;
  bool all = true;
  double worst = -1e300;
  for (std::uint32_t n = 3; n <= 12; ++n) {
    all = all && within_psi_bound(a.count(n), n, h);
    worst = std::max(worst, std::log(static_cast<double>(a.count(n))) - n * log_psi(h));
  }
  o.pass = all;
  o.payload = {{"psi", psi(h)}, {"worst_log_margin", worst}};
  o.detail = "Psi(0.9) = " + fmt(psi(h), 8) + ", max_n log|A_n| - n log Psi = " + fmt(worst);
  return o;
}

// 4. Closed forms and the Chernoff inequality.
Outcome formula_suite(unsigned) {
  Outcome o;
  bool psi_ok = psi(1.0) == 4.0;
  bool rate_ok = true;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    rate_ok = rate_ok && std::abs(rate_function(p, p)) <= 1e-12 &&
              std::abs(rate_function(p, 0.0) + std::log(1 - p)) <= 1e-12;
  }
  const auto t = thresholds(1.0);
  const bool thr_ok = std::abs(t.pc_bound - 0.5) <= 1e-12 && std::abs(t.expansion_threshold - 0.75) <= 1e-12 &&
                      std::abs(t.survival_threshold - 0.5) <= 1e-12;
  // At alpha = 0 the bound is an equality, (1-p)^n on both sides, so the
  // comparison allows a relative rounding slack of 1e-12.
  std::size_t checked = 0, violations = 0;
  double worst_excess = 0.0;
  for (double p : {0.3, 0.5, 0.7, 0.9}) {
    for (int i = 0; i <= 9; ++i) {
      const double alpha = 0.1 * i * p;
      for (std::uint64_t n = 1; n <= 200; ++n) {
        const auto m = static_cast<std::uint64_t>(std::floor(alpha * static_cast<double>(n)));
        ++checked;
        const double tail = binomial_tail(n, p, m);
        const double bound = std::exp(-static_cast<double>(n) * rate_function(p, alpha));
        worst_excess = std::max(worst_excess, tail / bound - 1.0);
        if (tail > bound * (1.0 + 1e-12)) ++violations;
      }
    }
  }
  o.pass = psi_ok && rate_ok && thr_ok && violations == 0;
  o.payload = {{"chernoff_checked", checked}, {"violations", violations}, {"worst_excess", worst_excess}};
  o.detail = std::string("Psi(1)=4 ") + (psi_ok ? "ok" : "FAIL") + ", I_p identities " + (rate_ok ? "ok" : "FAIL") +
             ", thresholds(1) " + (thr_ok ? "ok" : "FAIL") + ", Chernoff " + std::to_string(checked - violations) +
             "/" + std::to_string(checked) +
             " (largest relative excess " + fmt(worst_excess, 3) + ")";
  return o;
}

// 5. Onset of the survival curve on T_2. A finite budget blurs the sharp
// transition, so the crossing is located as the x-intercept of the linear
// part of the curve just above it.
Outcome percolation_threshold(unsigned workers) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto t2 = make_regular_tree(2);
  const std::vector<double> ps = {0.48, 0.50, 0.52, 0.54, 0.56};
  bool all = true;
  std::string detail;
  for (auto mode : {PercolationMode::kBond, PercolationMode::kSite}) {
    const auto curve = survival_curve(*t2, mode, ps, 10000, 100000, kMasterSeed, workers);
    const auto onset = survival_onset(curve);
    Json pts = Json::array();
    for (const auto& pt : curve) pts.push_back({{"p", pt.p}, {"survived", pt.survived}});
    o.payload[std::string(mode_name(mode))] = {{"curve", pts}, {"onset", onset ? Json(*onset) : Json(nullptr)}};
    const bool ok = onset && std::abs(*onset - 0.5) <= 0.02;
    all = all && ok;
    detail += std::string(mode_name(mode)) + " onset " + (onset ? fmt(*onset) : "none") + ", ";
  }
  const double secs = seconds_since(t0);
  o.pass = all && secs < 300;
  o.detail = detail + "target 0.50 +- 0.02, " + fmt(secs, 3) + " s";
  return o;
}

// 6. Exponential decay of the closed-boundary histogram at p = 0.7.
Outcome boundary_tail(unsigned workers) {
  Outcome o;
  const auto hist = boundary_tail_histogram(*make_regular_tree(2), 0.7, 10000, 100000, kMasterSeed, workers);
  std::vector<double> xs, ys;
  bool decreasing = true;
  for (const auto& [n, c] : hist.finite_counts) {
    if (c < 50) break;  // contiguous range from the smallest n
    if (!ys.empty() && std::log(hist.frequency(n)) >= ys.back()) decreasing = false;
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log(hist.frequency(n)));
  }
  for (const auto& [n, c] : hist.finite_counts) o.payload["histogram"].push_back({n, c});
  if (xs.size() < 3) {
    o.detail = "fewer than three boundary sizes with >= 50 clusters";
    return o;
  }
  const auto fit = linear_fit(xs, ys);
  o.pass = decreasing && fit.slope_upper() < 0;
  o.payload["slope"] = fit.slope;
  o.detail = "n in [" + fmt(xs.front()) + ", " + fmt(xs.back()) + "], slope " + fmt(fit.slope) + " CI [" +
             fmt(fit.slope_lower()) + ", " + fmt(fit.slope_upper()) + "], " +
             (decreasing ? "strictly decreasing" : "not monotone");
  return o;
}

// 7. Galton-Watson suite for (1/4, 0, 3/4).
Outcome gw_suite(unsigned workers) {
  Outcome o;
  const auto law = OffspringDistribution::parse("0.25,0,0.75");
  const double q = extinction_probability(law);
  const bool q_ok = std::abs(q - 1.0 / 3.0) <= 1e-10;

  const std::uint64_t n = 100000;
  std::vector<std::uint8_t> died(n, 0);
  parallel_for(n, workers, [&](std::uint64_t i) {
    Rng rng(trial_seed(kMasterSeed, i));
    died[i] = total_progeny(law, rng, 100000, 60) ? 1 : 0;
  });
  double freq = 0;
  for (auto d : died) freq += d;
  freq /= static_cast<double>(n);
  const bool freq_ok = std::abs(freq - 1.0 / 3.0) <= 0.005;

  const auto dec = backbone_decompose(law);
  bool backbone_ok = std::abs(dec.backbone.prob(2) - 1.0) <= 1e-12;
  for (std::size_t k = 0; k <= dec.backbone.max_offspring(); ++k) {
    if (k != 2) backbone_ok = backbone_ok && dec.backbone.prob(k) == 0.0;
  }

  // Bush law sampled directly versus rejection of surviving trees; 3 * 10^5
  // rejection trials leave about 10^5 finite trees.
  const auto tail = conditioned_finite_size_tail(law, n, kMasterSeed, 100000, 50, workers);
  const auto rej = rejection_finite_sizes(law, 3 * n, kMasterSeed + 1, 100000, 60, workers);
  std::map<std::size_t, std::uint64_t> a, b;
  for (const auto& [s, c] : tail.size_counts) a[std::min<std::size_t>(s, 21)] += c;
  for (const auto& [s, c] : rej) b[std::min<std::size_t>(s, 21)] += c;
  std::uint64_t rej_total = 0;
  for (const auto& [s, c] : rej) rej_total += c;
  const double tv = total_variation(a, b);
  const bool tv_ok = tv < 0.01;
  const bool slope_ok = tail.log_tail_fit.n >= 3 && tail.log_tail_fit.slope_upper() < 0;

  o.pass = q_ok && freq_ok && backbone_ok && tv_ok && slope_ok;
  o.payload = {{"q", q}, {"extinction_frequency", freq}, {"tv", tv}, {"slope", tail.log_tail_fit.slope},
               {"rejection_accepted", rej_total}};
  o.detail = "q = " + fmt(q, 15) + ", extinction freq " + fmt(freq, 5) + ", backbone Y=2 " +
             (backbone_ok ? "ok" : "FAIL") + ", bush TV " + fmt(tv, 3) + " (" + std::to_string(rej_total) +
             " rejection samples), tail slope " + fmt(tail.log_tail_fit.slope, 3) + " CI upper " +
             fmt(tail.log_tail_fit.slope_upper(), 3);
  return o;
}

// 8. Exhaustive metric check on the radius-8 ball of G_1.
Outcome lamplighter_metric(unsigned) {
  Outcome o;
  const auto w = make_lamplighter_zd(1);
  const auto dist = testing::bfs_distances(*w, w->basepoint(), 8);
  std::size_t exact_bad = 0, bound_bad = 0;
  for (const auto& [key, d] : dist) {
    const auto s = decode_lamp_state(key);
    if (lamplighter_distance_d1(*w, s) != d) ++exact_bad;
    const auto b = lamplighter_distance_bounds(*w, s);
    if (b.lower > d || b.upper < d) ++bound_bad;
  }
  o.pass = exact_bad == 0 && bound_bad == 0;
  o.payload = {{"vertices", dist.size()}, {"exact_mismatches", exact_bad}, {"bound_violations", bound_bad}};
  o.detail = std::to_string(dist.size()) + " vertices, " + std::to_string(exact_bad) + " exact mismatches, " +
             std::to_string(bound_bad) + " bound violations";
  return o;
}

Json ladder_json(const ExitLadder& l) {
  Json j = Json::array();
  for (const auto& r : l.rows) j.push_back({r.level, r.exits, r.returns, r.undecided});
  return j;
}

// Normal-approximation 95% lower limit of a binomial proportion.
double proportion_lower(const ExitRow& r) {
  const double p = r.estimate();
  return p - 1.959963984540054 * std::sqrt(p * (1 - p) / static_cast<double>(r.trials));
}

const std::vector<std::uint64_t> kLevels = {5, 10, 20, 40};
constexpr std::uint64_t kLadderTrials = 1000;

// 9. Zero speed on G_1.
Outcome zero_speed(unsigned workers) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = make_lamplighter_zd(1);
  const PercolationConfig perc{0.9, PercolationMode::kBond, 0};
  WalkOptions opts;
  opts.steps = 100000;
  const auto est = speed_estimate(*w, perc, opts, 50, kMasterSeed, workers);
  double at_1000 = -1, final = -1;
  for (const auto& r : est.rows) {
    if (!r.exact) continue;
    if (r.n == 1000) at_1000 = r.exact->mean;
    if (r.n == opts.steps) final = r.exact->mean;
    o.payload["exact"].push_back({r.n, r.exact->mean});
  }
  const auto ladder = exit_before_return(*w, perc, kLevels, kLadderTrials, 10'000'000, kMasterSeed, 2000, workers);
  bool decreasing = true;
  std::string ests;
  for (std::size_t i = 0; i < ladder.rows.size(); ++i) {
    if (i && ladder.rows[i].estimate() >= ladder.rows[i - 1].estimate()) decreasing = false;
    ests += (i ? "/" : "") + fmt(ladder.rows[i].estimate(), 3);
  }
  o.payload["ladder"] = ladder_json(ladder);
  o.payload["resampled"] = {est.resampled_trials, ladder.resampled_trials};
  const double secs = seconds_since(t0);
  o.pass = final >= 0 && final < 0.05 && final < at_1000 && decreasing && secs < 600;
  o.detail = "exact/n " + fmt(final) + " at n=1e5 vs " + fmt(at_1000) + " at n=1e3, exit-before-return " + ests +
             " over N=5/10/20/40 (" + std::to_string(kLadderTrials) + " trials), resampled " +
             std::to_string(est.resampled_trials) + ", " + fmt(secs, 3) + " s";
  return o;
}

// 10. Positive speed on G_3.
Outcome positive_speed(unsigned workers) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = make_lamplighter_zd(3);
  const PercolationConfig perc{0.95, PercolationMode::kBond, 0};
  WalkOptions opts;
  opts.steps = 100000;
  const auto est = speed_estimate(*w, perc, opts, 50, kMasterSeed, workers);
  const auto& last = est.rows.back();
  const SpeedRow* mid = nullptr;
  for (const auto& r : est.rows) {
    if (r.n == 10000) mid = &r;
    o.payload["rows"].push_back({r.n, r.lower.mean, r.upper.mean, r.regenerations.mean});
  }
  const bool speed_ok = last.n == opts.steps && last.lower.mean >= 0.01 && last.lower.lower() > 0;
  // Stable: zeta/n at n = 10^5 within 10% of its value at n = 10^4.
  const bool zeta_ok = mid && last.regenerations.lower() > 0 &&
                       std::abs(last.regenerations.mean / mid->regenerations.mean - 1) <= 0.1;
  const auto ladder = exit_before_return(*w, perc, kLevels, kLadderTrials, 10'000'000, kMasterSeed, 2000, workers);
  const auto& r20 = ladder.rows[2];
  const auto& r40 = ladder.rows[3];
  const bool plateau = r20.estimate() > 0 && r40.estimate() / r20.estimate() >= 0.8 && proportion_lower(r40) > 0.05;
  std::string ests;
  for (std::size_t i = 0; i < ladder.rows.size(); ++i) ests += (i ? "/" : "") + fmt(ladder.rows[i].estimate(), 3);
  o.payload["ladder"] = ladder_json(ladder);
  const double secs = seconds_since(t0);
  o.pass = speed_ok && zeta_ok && plateau && secs < 900;
  o.detail = "lower/n " + fmt(last.lower.mean) + " CI [" + fmt(last.lower.lower()) + ", " + fmt(last.lower.upper()) +
             "], zeta/n " + fmt(last.regenerations.mean) + " (n=1e4: " +
             (mid ? fmt(mid->regenerations.mean) : "missing") + "), exit-before-return " + ests + ", " +
             fmt(secs, 3) + " s";
  return o;
}

// 11. Stretch dichotomy on the rooted binary tree.
Outcome stretch_dichotomy(unsigned workers) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t max_size = 14;
  const std::uint64_t seeds = 100;
  const OraclePtr base = make_rooted_tree(2);
  auto averaged = [&](const StretchLaw& law) {
    std::vector<ExpansionProfile> prof(seeds);
    parallel_for(seeds, workers, [&](std::uint64_t i) {
      const StretchOracle g(base, StretchDescriptor(law, trial_seed(kMasterSeed, i)));
      prof[i] = expansion_profile(g, max_size, BoundaryMode::kEdge);
    });
    std::vector<double> iota(max_size + 1, 0.0), f(max_size + 1, 0.0);
    for (const auto& p : prof) {
      for (std::size_t n = 1; n <= max_size; ++n) {
        iota[n] += p.iota[n] / static_cast<double>(seeds);
        f[n] += p.f[n] / static_cast<double>(seeds);
      }
    }
    return std::pair{iota, f};
  };
  const auto [geo_iota, geo_f] = averaged(GeometricLength{0.5});
  const auto [pow_iota, pow_f] = averaged(TruncatedPowerLawLength{2.0, 1000});
  bool exceeds = true, pow_decreasing = true;
  for (std::size_t n = 1; n <= max_size; ++n) {
    exceeds = exceeds && geo_iota[n] > pow_iota[n];
    if (n > 1) pow_decreasing = pow_decreasing && pow_f[n] < pow_f[n - 1];
  }
  const double ratio = geo_iota[max_size] / pow_iota[max_size];
  o.payload = {{"geometric_iota", geo_iota}, {"power_iota", pow_iota}, {"power_f", pow_f}};
  o.pass = exceeds && pow_decreasing && ratio >= 2;
  o.detail = std::string("geometric tail above power-law tail at every n: ") + (exceeds ? "yes" : "no") +
             ", power-law f(k) decreasing: " + (pow_decreasing ? "yes" : "no") + ", final tails " +
             fmt(geo_iota[max_size]) + " vs " + fmt(pow_iota[max_size]) + " (ratio " + fmt(ratio, 3) +
             ", need >= 2), " + fmt(seconds_since(t0), 3) + " s";
  return o;
}

// 12. Symmetric kernel on a 10-vertex open cluster of G_1.
Outcome reversibility(unsigned) {
  Outcome o;
  const auto w = make_lamplighter_zd(1);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const PercolationConfig cfg{0.5, PercolationMode::kBond, trial_seed(kMasterSeed, i)};
    const auto c = explore_cluster(*w, cfg, w->basepoint(), 11);
    if (!c.finite() || c.vertices.size() != 10) continue;
    const auto m = delayed_transition_matrix(*w, cfg, c.vertices);
    std::size_t asym = 0, open_pairs = 0;
    double worst_row = 0;
    for (std::size_t a = 0; a < m.size(); ++a) {
      double row = 0;
      for (std::size_t b = 0; b < m.size(); ++b) {
        row += m[a][b];
        if (a != b && m[a][b] != m[b][a]) ++asym;
        if (a < b && m[a][b] > 0) ++open_pairs;
      }
      worst_row = std::max(worst_row, std::abs(row - 1));
    }
    o.pass = asym == 0 && worst_row < 1e-12;
    o.payload = {{"trial", i}, {"open_edges", open_pairs}, {"asymmetric", asym}};
    o.detail = "cluster from trial " + std::to_string(i) + " with " + std::to_string(open_pairs) +
               " open edges, " + std::to_string(asym) + " asymmetric entries, max |row sum - 1| " + fmt(worst_row);
    return o;
  }
  o.detail = "no 10-vertex cluster found";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, Check>> checks = {
      {1, enumeration_oracle}, {2, catalan_identity}, {3, psi_bound},       {4, formula_suite},
      {5, percolation_threshold}, {6, boundary_tail}, {7, gw_suite},       {8, lamplighter_metric},
      {9, zero_speed},         {10, positive_speed}, {11, stretch_dichotomy}, {12, reversibility},
  };
  const std::vector<std::string> names = {"",
                                          "enumeration oracle equivalence",
                                          "Catalan identity",
                                          "Psi(0.9)^n bound",
                                          "formula suite",
                                          "percolation threshold on T_2",
                                          "boundary tail decay",
                                          "Galton-Watson suite",
                                          "lamplighter metric",
                                          "zero speed, d=1",
                                          "positive speed, d=3",
                                          "stretch dichotomy",
                                          "reversibility",
                                          "determinism"};
  int failures = 0;
  std::vector<std::string> payloads;
  for (const auto& [id, check] : checks) {
    const auto out = check(1);
    payloads.push_back(out.payload.dump());
    std::printf("CRITERION %d (%s): %s | %s\n", id, names[id].c_str(), out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }

  // 13: every payload again with three workers.
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t same = 0;
  std::string differing;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (checks[i].second(3).payload.dump() == payloads[i]) {
      ++same;
    } else {
      differing += " " + std::to_string(checks[i].first);
    }
  }
  const bool det = same == checks.size();
  std::printf("CRITERION 13 (%s): %s | %zu/%zu payloads byte-identical with 1 and 3 workers%s, %s s\n",
              names[13].c_str(), det ? "PASS" : "FAIL", same, checks.size(),
              det ? "" : (", differing:" + differing).c_str(), fmt(seconds_since(t0), 3).c_str());
  if (!det) ++failures;
  std::printf("SUMMARY: %d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
