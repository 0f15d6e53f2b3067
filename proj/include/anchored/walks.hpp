#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "anchored/lamplighter.hpp"
#include "anchored/lamplighter_metric.hpp"
#include "anchored/percolation.hpp"
#include "anchored/stats.hpp"

namespace anchored {

// One simple-random-walk step: uniform over neighbors(v). Throws
// std::runtime_error at an isolated vertex.
VertexKey srw_step(const GraphOracle& g, Rng& rng, const VertexKey& v);

struct DelayedStep {
  VertexKey next;
  std::size_t choice = 0;  // 0 = the current vertex, i = neighbors(v)[i-1]
  bool moved = false;      // chose a neighbor across an open edge
};

// Delayed step: choose uniformly among v and its D neighbors; move only when
// the chosen edge is open. Site mode treats an edge as open when both
// endpoints are.
DelayedStep delayed_step(const GraphOracle& g, const PercolationConfig& cfg, Rng& rng, const VertexKey& v);

// Analytic delayed-walk kernel restricted to `vertices` (sorted): entry
// (i, j) is 1/(D_i + 1) for every open edge, the diagonal takes what is left.
// Mass leaving the list stays off the matrix, so on a whole cluster rows sum
// to 1.
std::vector<std::vector<double>> delayed_transition_matrix(const GraphOracle& g, const PercolationConfig& cfg,
                                                           const std::vector<VertexKey>& vertices);

// Walker on a lamplighter graph that keeps its state incrementally. Marker
// sites are interned on first sight; the lamp digest is updated per switch, so
// each step costs O(1) PRF evaluations whatever the number of lit lamps. Its
// open/closed decisions coincide with edge_open / vertex_open on the encoded
// states.
class LamplighterWalker {
 public:
  enum class Move { kStay, kMarker, kSwitch, kBlocked };

  LamplighterWalker(const LamplighterOracle& w, std::optional<PercolationConfig> percolation);

  Move delayed_step(Rng& rng);
  Move srw_step(Rng& rng);

  std::uint64_t time() const noexcept { return time_; }
  std::size_t range_size() const noexcept { return range_size_; }
  std::size_t lamp_count() const noexcept { return lamp_count_; }
  std::int64_t lamp_norm_sum() const noexcept { return lamp_norm_sum_; }
  std::int64_t marker_distance() const { return sites_[marker_].distance; }
  bool marker_at_start() const noexcept { return marker_ == 0; }
  const VertexKey& marker_key() const { return sites_[marker_].key; }

  // Number of steps k <= time() that switched the lamp at a site occupied at
  // times k-1 and k and at no other time so far.
  std::uint64_t regeneration_count() const;

  LampState state() const;
  std::unordered_set<VertexKey, VertexKeyHash> range_set() const;

 private:
  struct Site {
    VertexKey key;
    Fingerprint fp = 0;
    std::int64_t distance = 0;
    GroupElement lamp = 0;
    std::int64_t first_visit = -1;
    std::int64_t last_visit = -1;
    bool switched_on_second = false;
    bool expanded = false;
    std::vector<std::uint32_t> neighbors;
    std::vector<Fingerprint> edge_fps;
  };

  std::uint32_t intern(VertexKey key);
  void expand(std::uint32_t site);
  Move apply(std::size_t choice);  // 1-based neighbor index
  void visit_current(bool switched);

  const LamplighterOracle& w_;
  std::optional<PercolationConfig> percolation_;
  std::vector<Site> sites_;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index_;
  std::uint32_t marker_ = 0;
  Fingerprint digest_ = 0;
  std::uint64_t time_ = 0;
  std::size_t range_size_ = 0;
  std::size_t lamp_count_ = 0;
  std::int64_t lamp_norm_sum_ = 0;
  bool start_open_ = true;
};

// Geometric checkpoints round(10^(2 + i/2)) up to `steps`, plus `steps`.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t steps);

enum class WalkStatus { kCompleted, kNotInCluster };

struct WalkCheckpoint {
  std::uint64_t n = 0;
  std::size_t range = 0;          // |R_n|
  std::size_t lamps = 0;          // |eta_n|
  std::int64_t marker_distance = 0;
  std::int64_t lamp_norm = 0;     // sum |eta_n(x)|_F
  DistanceBounds bounds;
  std::optional<std::int64_t> exact;  // base Z^1 only
  std::uint64_t regenerations = 0;
  bool at_start = false;          // m_n = m_0
  // |m_n| + 2|R_n| + sum |eta_n(x)|_F, the range form of the upper bound.
  std::int64_t range_bound = 0;
};

struct WalkTrace {
  WalkStatus status = WalkStatus::kCompleted;
  std::vector<WalkCheckpoint> checkpoints;
};

struct WalkOptions {
  std::uint64_t steps = 0;
  std::vector<std::uint64_t> checkpoints;  // empty = geometric
  // A start counts as in the infinite cluster when exploration from the
  // basepoint exceeds this many vertices.
  std::size_t cluster_budget = 2000;
  bool compute_upper = true;
};

// Simple random walk without percolation, delayed walk with it.
WalkTrace simulate_walk(const LamplighterOracle& w, const std::optional<PercolationConfig>& percolation,
                        const WalkOptions& options, std::uint64_t walk_seed);

bool start_in_large_cluster(const GraphOracle& g, const PercolationConfig& cfg, std::size_t budget);

struct SpeedRow {
  std::uint64_t n = 0;
  std::optional<MeanCI> exact;  // statistic / n
  MeanCI lower;
  MeanCI upper;
  MeanCI range;
  MeanCI lamps;
  MeanCI regenerations;
  double return_frequency = 0.0;
};

struct SpeedEstimate {
  std::vector<SpeedRow> rows;
  std::uint64_t trials = 0;
  std::uint64_t resampled_trials = 0;
};

// Percolation template: p and mode are used, the seed is derived per trial.
// Trial i draws seeds from trial_seed(master_seed, i); a start outside a large
// cluster is resampled with the next attempt's seeds and counted.
SpeedEstimate speed_estimate(const LamplighterOracle& w, const std::optional<PercolationConfig>& percolation,
                             const WalkOptions& options, std::uint64_t trials, std::uint64_t master_seed,
                             unsigned workers = 1);

struct ExitRow {
  std::uint64_t level = 0;       // N
  std::uint64_t exits = 0;       // tau_N < tau_o^+
  std::uint64_t returns = 0;     // tau_o^+ < tau_N
  std::uint64_t undecided = 0;   // step cap hit first
  std::uint64_t trials = 0;

  double estimate() const noexcept { return trials ? static_cast<double>(exits) / static_cast<double>(trials) : 0.0; }
  double undecided_fraction() const noexcept {
    return trials ? static_cast<double>(undecided) / static_cast<double>(trials) : 0.0;
  }
};

struct ExitLadder {
  std::vector<ExitRow> rows;
  std::uint64_t resampled_trials = 0;
};

// Events for every level of the ladder come from one trajectory per trial:
// the walk stops when the marker comes back to o after its first departure
// or reaches the top level. The return time counts from that departure,
// since the delayed marker often idles at o for its first steps.
ExitLadder exit_before_return(const LamplighterOracle& w, const PercolationConfig& percolation,
                              const std::vector<std::uint64_t>& levels, std::uint64_t trials,
                              std::uint64_t step_cap, std::uint64_t master_seed, std::size_t cluster_budget = 2000,
                              unsigned workers = 1);

struct ReturnCurve {
  std::vector<std::pair<std::uint64_t, double>> frequency;  // even n, P[X_n = o]
  std::uint64_t trials = 0;
  LinearFit fit;  // log frequency against n^(1/3)
  double c = 0.0;  // -slope
  double c_lower = 0.0;
  double c_upper = 0.0;
};

// Simple random walks from the basepoint; the fit uses even n >= 2 with at
// least min_count returns, weighted by inverse binomial variance of the log.
ReturnCurve return_probability(const GraphOracle& g, std::uint64_t n_max, std::uint64_t trials,
                               std::uint64_t master_seed, std::uint64_t min_count = 30, unsigned workers = 1);

}  // namespace anchored
