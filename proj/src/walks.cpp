#include "anchored/walks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anchored/families.hpp"
#include "anchored/parallel.hpp"

namespace anchored {

VertexKey srw_step(const GraphOracle& g, Rng& rng, const VertexKey& v) {
  auto ns = g.neighbors(v);
  if (ns.empty()) throw std::runtime_error("random walk reached an isolated vertex");
  return std::move(ns[rng.below(ns.size())]);
}

namespace {

bool step_open(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& v, const VertexKey& w) {
  if (cfg.mode == PercolationMode::kBond) return edge_open(g, cfg, v, w);
  return vertex_open(g, cfg, v) && vertex_open(g, cfg, w);
}

}  // namespace

DelayedStep delayed_step(const GraphOracle& g, const PercolationConfig& cfg, Rng& rng, const VertexKey& v) {
  auto ns = g.neighbors(v);
  DelayedStep s;
  s.choice = static_cast<std::size_t>(rng.below(ns.size() + 1));
  if (s.choice > 0 && step_open(g, cfg, v, ns[s.choice - 1])) {
    s.next = std::move(ns[s.choice - 1]);
    s.moved = true;
  } else {
    s.next = v;
  }
  return s;
}

std::vector<std::vector<double>> delayed_transition_matrix(const GraphOracle& g, const PercolationConfig& cfg,
                                                           const std::vector<VertexKey>& vertices) {
  if (!std::is_sorted(vertices.begin(), vertices.end())) throw std::invalid_argument("vertices must be sorted");
  const std::size_t n = vertices.size();
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ns = g.neighbors(vertices[i]);
    const double denom = static_cast<double>(ns.size() + 1);
    std::size_t open = 0;
    for (const auto& w : ns) {
      if (!step_open(g, cfg, vertices[i], w)) continue;
      ++open;
      auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
      if (it != vertices.end() && *it == w) p[i][static_cast<std::size_t>(it - vertices.begin())] = 1.0 / denom;
    }
    p[i][i] = static_cast<double>(ns.size() + 1 - open) / denom;
  }
  return p;
}

// ---------------------------------------------------------------------------
// LamplighterWalker

LamplighterWalker::LamplighterWalker(const LamplighterOracle& w, std::optional<PercolationConfig> percolation)
    : w_(w), percolation_(std::move(percolation)) {
  if (percolation_) percolation_->check();
  marker_ = intern(w_.base().basepoint());
  visit_current(false);
  // Site mode needs both endpoints open. Every later position is open by
  // construction, so only the start has to be checked.
  if (percolation_ && percolation_->mode == PercolationMode::kSite) {
    start_open_ = vertex_open_fp(*percolation_, w_.state_fingerprint(digest_, sites_[marker_].fp));
  }
}

std::uint32_t LamplighterWalker::intern(VertexKey key) {
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(sites_.size());
  Site s;
  s.fp = w_.base().vertex_fingerprint(key);
  s.distance = base_distance(w_.base(), key);
  s.key = key;
  index_.emplace(std::move(key), id);
  sites_.push_back(std::move(s));
  return id;
}

void LamplighterWalker::expand(std::uint32_t site) {
  if (sites_[site].expanded) return;
  const VertexKey key = sites_[site].key;
  std::vector<std::uint32_t> ids;
  std::vector<Fingerprint> fps;
  for (auto& x : w_.base().neighbors(key)) {
    fps.push_back(w_.base().edge_fingerprint(key, x));
    ids.push_back(intern(std::move(x)));
  }
  Site& s = sites_[site];  // intern may have reallocated
  s.neighbors = std::move(ids);
  s.edge_fps = std::move(fps);
  s.expanded = true;
}

void LamplighterWalker::visit_current(bool switched) {
  Site& s = sites_[marker_];
  const auto t = static_cast<std::int64_t>(time_);
  if (s.first_visit < 0) {
    s.first_visit = t;
    ++range_size_;
  }
  if (switched && s.first_visit == t - 1) s.switched_on_second = true;
  s.last_visit = t;
}

LamplighterWalker::Move LamplighterWalker::apply(std::size_t choice) {
  expand(marker_);
  if (!start_open_) return Move::kBlocked;
  const std::size_t degree = sites_[marker_].neighbors.size();
  if (choice <= degree) {
    const auto target = sites_[marker_].neighbors[choice - 1];
    bool open = true;
    if (percolation_ && percolation_->mode == PercolationMode::kBond) {
      open = edge_open_fp(*percolation_, w_.move_edge_fingerprint(digest_, sites_[marker_].edge_fps[choice - 1]));
    } else if (percolation_) {
      open = vertex_open_fp(*percolation_, w_.state_fingerprint(digest_, sites_[target].fp));
    }
    if (!open) return Move::kBlocked;
    marker_ = target;
    return Move::kMarker;
  }
  Site& s = sites_[marker_];
  const auto& group = w_.group();
  const GroupElement a = s.lamp;
  const GroupElement b = group.neighbor(a, choice - degree - 1);
  const Fingerprint off = a == FiniteGroupGraph::identity() ? digest_ : digest_ - w_.lamp_term(s.fp, a);
  const Fingerprint updated = b == FiniteGroupGraph::identity() ? off : off + w_.lamp_term(s.fp, b);
  bool open = true;
  if (percolation_ && percolation_->mode == PercolationMode::kBond) {
    open = edge_open_fp(*percolation_, w_.lamp_edge_fingerprint(off, s.fp, a, b));
  } else if (percolation_) {
    open = vertex_open_fp(*percolation_, w_.state_fingerprint(updated, s.fp));
  }
  if (!open) return Move::kBlocked;
  if (a != FiniteGroupGraph::identity()) {
    --lamp_count_;
    lamp_norm_sum_ -= group.norm(a);
  }
  if (b != FiniteGroupGraph::identity()) {
    ++lamp_count_;
    lamp_norm_sum_ += group.norm(b);
  }
  s.lamp = b;
  digest_ = updated;
  return Move::kSwitch;
}

LamplighterWalker::Move LamplighterWalker::delayed_step(Rng& rng) {
  expand(marker_);
  const std::size_t d = sites_[marker_].neighbors.size() + w_.group().generator_count();
  const auto choice = static_cast<std::size_t>(rng.below(d + 1));
  const Move m = choice == 0 ? Move::kStay : apply(choice);
  ++time_;
  visit_current(m == Move::kSwitch);
  return m;
}

LamplighterWalker::Move LamplighterWalker::srw_step(Rng& rng) {
  expand(marker_);
  const std::size_t d = sites_[marker_].neighbors.size() + w_.group().generator_count();
  const auto choice = static_cast<std::size_t>(rng.below(d)) + 1;
  const Move m = apply(choice);
  ++time_;
  visit_current(m == Move::kSwitch);
  return m;
}

std::uint64_t LamplighterWalker::regeneration_count() const {
  std::uint64_t count = 0;
  for (const auto& s : sites_) {
    if (s.switched_on_second && s.last_visit == s.first_visit + 1) ++count;
  }
  return count;
}

LampState LamplighterWalker::state() const {
  LampState st;
  st.marker = sites_[marker_].key;
  for (const auto& s : sites_)
    if (s.lamp != FiniteGroupGraph::identity()) st.lamps.emplace(s.key, s.lamp);
  return st;
}

std::unordered_set<VertexKey, VertexKeyHash> LamplighterWalker::range_set() const {
  std::unordered_set<VertexKey, VertexKeyHash> out;
  out.reserve(range_size_);
  for (const auto& s : sites_)
    if (s.first_visit >= 0) out.insert(s.key);
  return out;
}

// ---------------------------------------------------------------------------
// Trajectories and ensembles

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t steps) {
  std::vector<std::uint64_t> out;
  for (int i = 0;; ++i) {
    const auto n = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 2.0 + 0.5 * i)));
    if (n > steps) break;
    out.push_back(n);
  }
  if (out.empty() || out.back() != steps) out.push_back(steps);
  return out;
}

bool start_in_large_cluster(const GraphOracle& g, const PercolationConfig& cfg, std::size_t budget) {
  return explore_basepoint_cluster(g, cfg, budget).status == ClusterStatus::kBudgetExceeded;
}

namespace {

bool base_is_line(const LamplighterOracle& w) {
  const auto* lattice = dynamic_cast<const LatticeOracle*>(&w.base());
  return lattice && lattice->dimension() == 1;
}

WalkCheckpoint capture(const LamplighterOracle& w, const LamplighterWalker& walker, bool compute_upper) {
  WalkCheckpoint c;
  c.n = walker.time();
  c.range = walker.range_size();
  c.lamps = walker.lamp_count();
  c.marker_distance = walker.marker_distance();
  c.lamp_norm = walker.lamp_norm_sum();
  c.regenerations = walker.regeneration_count();
  c.at_start = walker.marker_at_start();
  c.range_bound = c.marker_distance + 2 * static_cast<std::int64_t>(c.range) + c.lamp_norm;
  c.bounds.lower = c.marker_distance + c.lamp_norm;
  c.bounds.upper = c.range_bound;
  if (compute_upper || base_is_line(w)) {
    const auto st = walker.state();
    if (compute_upper) c.bounds = lamplighter_distance_bounds(w, st, walker.range_set());
    if (base_is_line(w)) c.exact = lamplighter_distance_d1(w, st);
  }
  return c;
}

std::uint64_t attempt_seed(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t attempt) {
  const auto s = trial_seed(master_seed, trial);
  return attempt == 0 ? s : prf64(s, PrfDomain::kWalk, mix64(attempt));
}

std::uint64_t walk_seed_for(std::uint64_t s) { return prf64(s, PrfDomain::kWalk, 0); }

constexpr std::uint64_t kMaxAttempts = 10'000;

// Finds the first attempt whose start lies in a large cluster.
std::uint64_t first_good_attempt(const LamplighterOracle& w, const PercolationConfig& tmpl, std::uint64_t master_seed,
                                 std::uint64_t trial, std::size_t cluster_budget) {
  for (std::uint64_t a = 0; a < kMaxAttempts; ++a) {
    PercolationConfig cfg = tmpl;
    cfg.seed = attempt_seed(master_seed, trial, a);
    if (start_in_large_cluster(w, cfg, cluster_budget)) return a;
  }
  throw std::runtime_error("no start in a large cluster after " + std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace

WalkTrace simulate_walk(const LamplighterOracle& w, const std::optional<PercolationConfig>& percolation,
                        const WalkOptions& options, std::uint64_t walk_seed) {
  WalkTrace trace;
  if (percolation && !start_in_large_cluster(w, *percolation, options.cluster_budget)) {
    trace.status = WalkStatus::kNotInCluster;
    return trace;
  }
  auto checkpoints = options.checkpoints.empty() ? geometric_checkpoints(options.steps) : options.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  if (!checkpoints.empty() && checkpoints.back() > options.steps) {
    throw std::invalid_argument("checkpoint beyond the number of steps");
  }
  LamplighterWalker walker(w, percolation);
  Rng rng(walk_seed);
  std::size_t next = 0;
  while (next < checkpoints.size() && checkpoints[next] == 0) {
    trace.checkpoints.push_back(capture(w, walker, options.compute_upper));
    ++next;
  }
  for (std::uint64_t t = 1; t <= options.steps && next < checkpoints.size(); ++t) {
    if (percolation) {
      walker.delayed_step(rng);
    } else {
      walker.srw_step(rng);
    }
    while (next < checkpoints.size() && checkpoints[next] == t) {
      trace.checkpoints.push_back(capture(w, walker, options.compute_upper));
      ++next;
    }
  }
  return trace;
}

SpeedEstimate speed_estimate(const LamplighterOracle& w, const std::optional<PercolationConfig>& percolation,
                             const WalkOptions& options, std::uint64_t trials, std::uint64_t master_seed,
                             unsigned workers) {
  std::vector<WalkTrace> traces(trials);
  std::vector<std::uint64_t> attempts(trials, 0);
  parallel_for(trials, workers, [&](std::uint64_t i) {
    std::optional<PercolationConfig> cfg = percolation;
    if (cfg) {
      attempts[i] = first_good_attempt(w, *cfg, master_seed, i, options.cluster_budget);
      cfg->seed = attempt_seed(master_seed, i, attempts[i]);
    }
    traces[i] = simulate_walk(w, cfg, options, walk_seed_for(attempt_seed(master_seed, i, attempts[i])));
  });
  SpeedEstimate est;
  est.trials = trials;
  for (auto a : attempts) est.resampled_trials += a;
  if (trials == 0) return est;
  const std::size_t rows = traces[0].checkpoints.size();
  const bool has_exact = rows > 0 && traces[0].checkpoints[0].exact.has_value();
  for (std::size_t r = 0; r < rows; ++r) {
    SpeedRow row;
    row.n = traces[0].checkpoints[r].n;
    const double scale = row.n == 0 ? 0.0 : 1.0 / static_cast<double>(row.n);
    std::vector<double> exact, lower, upper, range, lamps, regen;
    std::uint64_t at_start = 0;
    for (const auto& t : traces) {
      const auto& c = t.checkpoints[r];
      if (has_exact) exact.push_back(static_cast<double>(*c.exact) * scale);
      lower.push_back(static_cast<double>(c.bounds.lower) * scale);
      upper.push_back(static_cast<double>(c.bounds.upper) * scale);
      range.push_back(static_cast<double>(c.range));
      lamps.push_back(static_cast<double>(c.lamps));
      regen.push_back(static_cast<double>(c.regenerations) * scale);
      at_start += c.at_start ? 1 : 0;
    }
    if (has_exact) row.exact = mean_ci(exact);
    row.lower = mean_ci(lower);
    row.upper = mean_ci(upper);
    row.range = mean_ci(range);
    row.lamps = mean_ci(lamps);
    row.regenerations = mean_ci(regen);
    row.return_frequency = static_cast<double>(at_start) / static_cast<double>(trials);
    est.rows.push_back(row);
  }
  return est;
}

ExitLadder exit_before_return(const LamplighterOracle& w, const PercolationConfig& percolation,
                              const std::vector<std::uint64_t>& levels, std::uint64_t trials,
                              std::uint64_t step_cap, std::uint64_t master_seed, std::size_t cluster_budget,
                              unsigned workers) {
  if (levels.empty()) throw std::invalid_argument("exit ladder needs at least one level");
  for (auto n : levels)
    if (n == 0) throw std::invalid_argument("exit levels must be at least 1");
  const auto top = static_cast<std::int64_t>(*std::max_element(levels.begin(), levels.end()));
  struct Outcome {
    std::int64_t max_distance = 0;
    bool returned = false;
    std::uint64_t attempt = 0;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, workers, [&](std::uint64_t i) {
    Outcome& out = outcomes[i];
    out.attempt = first_good_attempt(w, percolation, master_seed, i, cluster_budget);
    PercolationConfig cfg = percolation;
    cfg.seed = attempt_seed(master_seed, i, out.attempt);
    LamplighterWalker walker(w, cfg);
    Rng rng(walk_seed_for(cfg.seed));
    bool departed = false;
    for (std::uint64_t t = 0; t < step_cap; ++t) {
      walker.delayed_step(rng);
      if (walker.marker_at_start()) {
        if (departed) {
          out.returned = true;
          return;
        }
        continue;
      }
      departed = true;
      out.max_distance = std::max(out.max_distance, walker.marker_distance());
      if (out.max_distance >= top) return;
    }
  });
  ExitLadder ladder;
  for (const auto& o : outcomes) ladder.resampled_trials += o.attempt;
  for (auto n : levels) {
    ExitRow row;
    row.level = n;
    row.trials = trials;
    for (const auto& o : outcomes) {
      if (o.max_distance >= static_cast<std::int64_t>(n)) {
        ++row.exits;
      } else if (o.returned) {
        ++row.returns;
      } else {
        ++row.undecided;
      }
    }
    ladder.rows.push_back(row);
  }
  return ladder;
}

ReturnCurve return_probability(const GraphOracle& g, std::uint64_t n_max, std::uint64_t trials,
                               std::uint64_t master_seed, std::uint64_t min_count, unsigned workers) {
  const std::size_t slots = n_max / 2 + 1;
  std::vector<std::vector<std::uint8_t>> hits(trials);
  const auto o = g.basepoint();
  parallel_for(trials, workers, [&](std::uint64_t i) {
    auto& h = hits[i];
    h.assign(slots, 0);
    h[0] = 1;
    Rng rng(walk_seed_for(trial_seed(master_seed, i)));
    VertexKey v = o;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      v = srw_step(g, rng, v);
      if (n % 2 == 0 && v == o) h[n / 2] = 1;
    }
  });
  ReturnCurve curve;
  curve.trials = trials;
  std::vector<double> xs, ys, ws;
  for (std::size_t k = 0; k < slots; ++k) {
    std::uint64_t count = 0;
    for (const auto& h : hits) count += h[k];
    const double f = trials ? static_cast<double>(count) / static_cast<double>(trials) : 0.0;
    const std::uint64_t n = 2 * k;
    curve.frequency.emplace_back(n, f);
    if (n >= 2 && count >= min_count && f < 1.0) {
      xs.push_back(std::cbrt(static_cast<double>(n)));
      ys.push_back(std::log(f));
      ws.push_back(static_cast<double>(trials) * f / (1.0 - f));
    }
  }
  if (xs.size() >= 2) {
    curve.fit = linear_fit(xs, ys, ws);
    curve.c = -curve.fit.slope;
    curve.c_lower = -curve.fit.slope_upper();
    curve.c_upper = -curve.fit.slope_lower();
  }
  return curve;
}

}  // namespace anchored
