#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anchored/families.hpp"
#include "anchored/graph.hpp"

namespace anchored {

enum class PercolationMode { kBond, kSite };

std::string_view mode_name(PercolationMode m);
PercolationMode parse_mode(std::string_view s);

// omega as a pure function of (seed, canonical key): each edge (or vertex)
// gets a PRF uniform u, and is open iff u < p. Fixing the seed and raising p
// therefore only opens more edges.
struct PercolationConfig {
  double p = 0.5;
  PercolationMode mode = PercolationMode::kBond;
  std::uint64_t seed = 0;

  void check() const;
};

class ModeMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

double edge_uniform(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& u, const VertexKey& v);
double vertex_uniform(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& v);

bool edge_open(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& u, const VertexKey& v);
bool vertex_open(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& v);

inline bool edge_open_fp(const PercolationConfig& cfg, Fingerprint edge_fp) {
  return prf_uniform(cfg.seed, PrfDomain::kEdge, edge_fp) < cfg.p;
}
inline bool vertex_open_fp(const PercolationConfig& cfg, Fingerprint vertex_fp) {
  return prf_uniform(cfg.seed, PrfDomain::kVertex, vertex_fp) < cfg.p;
}

enum class ClusterStatus { kFinite, kBudgetExceeded };

// Outcome of the ordered cluster-growth process started at `start`.
//
// Bond mode: each step examines the oldest frontier edge (one endpoint in the
// current cluster H_j, one outside) and accepts it iff open; trace[j] = Y_j.
// rejected_count counts examined closed edges; on graphs with cycles a
// rejected edge can later become internal, so rejected_count >=
// closed_boundary_count, with equality on trees.
//
// Site mode: the same process over frontier vertices; closed_boundary_count
// is |d^V V(H)| and every rejected vertex is a boundary vertex.
struct ClusterReport {
  ClusterStatus status = ClusterStatus::kFinite;
  std::vector<VertexKey> vertices;  // sorted; V(H) when Finite
  std::size_t accepted_count = 0;   // sum of Y_j
  std::size_t rejected_count = 0;
  std::size_t examined_count = 0;   // N
  std::size_t open_edge_count = 0;  // open edges inside V(H); Finite bond only
  std::size_t closed_boundary_count = 0;  // n; Finite only
  std::vector<std::uint8_t> trace;        // Y_1..Y_N when recorded

  bool finite() const noexcept { return status == ClusterStatus::kFinite; }
};

ClusterReport explore_cluster(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& start,
                              std::size_t vertex_budget, bool record_trace = true);
ClusterReport site_explore_cluster(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& start,
                                   std::size_t vertex_budget, bool record_trace = true);

// Size-only growth process for TreeOracle started at the root. Examines edges
// (or vertices) in the same order as explore_cluster and keys the PRF on the
// same fingerprints, so outcomes agree exactly; fingerprints are extended
// parent-to-child instead of re-encoding keys.
struct TreeClusterSummary {
  ClusterStatus status = ClusterStatus::kFinite;
  std::size_t size = 0;
  std::size_t closed_boundary_count = 0;
  std::size_t examined_count = 0;
};

TreeClusterSummary explore_tree_cluster(const TreeOracle& tree, const PercolationConfig& cfg,
                                        std::size_t vertex_budget);

// Cluster of the basepoint, using the tree kernel when `g` is a TreeOracle.
TreeClusterSummary explore_basepoint_cluster(const GraphOracle& g, const PercolationConfig& cfg,
                                             std::size_t vertex_budget);

struct BoundaryHistogram {
  std::map<std::size_t, std::uint64_t> finite_counts;  // n -> #trials
  std::uint64_t survived = 0;  // BudgetExceeded
  std::uint64_t trials = 0;

  double frequency(std::size_t n) const;
};

// Bond percolation at p over `trials` seeds trial_seed(master_seed, i).
BoundaryHistogram boundary_tail_histogram(const GraphOracle& g, double p, std::uint64_t trials, std::size_t budget,
                                          std::uint64_t master_seed, unsigned workers = 1);

struct SurvivalPoint {
  double p = 0.0;
  std::uint64_t survived = 0;
  std::uint64_t trials = 0;
  double mean_finite_size = 0.0;

  double frequency() const { return trials ? static_cast<double>(survived) / static_cast<double>(trials) : 0.0; }
};

std::vector<SurvivalPoint> survival_curve(const GraphOracle& g, PercolationMode mode, const std::vector<double>& ps,
                                          std::uint64_t trials, std::size_t budget, std::uint64_t master_seed,
                                          unsigned workers = 1);

// Onset of the survival curve: x-intercept of the least-squares line through
// the points whose survival frequency lies in [lo, hi]. Returns nullopt with
// fewer than two such points.
std::optional<double> survival_onset(const std::vector<SurvivalPoint>& curve, double lo = 0.02, double hi = 0.6);

}  // namespace anchored
