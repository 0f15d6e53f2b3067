#include "anchored/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "anchored/parallel.hpp"

namespace anchored {

std::string_view mode_name(PercolationMode m) { return m == PercolationMode::kBond ? "bond" : "site"; }

PercolationMode parse_mode(std::string_view s) {
  if (s == "bond") return PercolationMode::kBond;
  if (s == "site") return PercolationMode::kSite;
  throw std::invalid_argument("percolation mode must be bond or site");
}

void PercolationConfig::check() const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("percolation p must be in [0,1]");
}

double edge_uniform(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& u, const VertexKey& v) {
  return prf_uniform(cfg.seed, PrfDomain::kEdge, g.edge_fingerprint(u, v));
}

double vertex_uniform(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& v) {
  return prf_uniform(cfg.seed, PrfDomain::kVertex, g.vertex_fingerprint(v));
}

bool edge_open(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& u, const VertexKey& v) {
  if (cfg.mode != PercolationMode::kBond) throw ModeMismatch("edge_open needs bond percolation");
  return edge_uniform(g, cfg, u, v) < cfg.p;
}

bool vertex_open(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& v) {
  if (cfg.mode != PercolationMode::kSite) throw ModeMismatch("vertex_open needs site percolation");
  return vertex_uniform(g, cfg, v) < cfg.p;
}

namespace {

using KeySet = std::unordered_set<VertexKey, VertexKeyHash>;

// Neighbors of v sorted by the canonical key of the edge {v, w}.
std::vector<VertexKey> neighbors_in_edge_order(const GraphOracle& g, const VertexKey& v) {
  auto ns = g.neighbors(v);
  std::sort(ns.begin(), ns.end(), [&v](const VertexKey& a, const VertexKey& b) {
    const VertexKey& alo = a < v ? a : v;
    const VertexKey& ahi = a < v ? v : a;
    const VertexKey& blo = b < v ? b : v;
    const VertexKey& bhi = b < v ? v : b;
    if (alo != blo) return alo < blo;
    return ahi < bhi;
  });
  return ns;
}

void finish(ClusterReport& r, std::vector<VertexKey> order) {
  std::sort(order.begin(), order.end());
  r.vertices = std::move(order);
}

}  // namespace

ClusterReport explore_cluster(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& start,
                              std::size_t vertex_budget, bool record_trace) {
  if (cfg.mode != PercolationMode::kBond) throw ModeMismatch("explore_cluster needs bond percolation");
  if (vertex_budget == 0) throw std::invalid_argument("vertex budget must be positive");
  cfg.check();
  g.validate(start);

  ClusterReport r;
  KeySet in_cluster{start};
  std::vector<VertexKey> order{start};
  struct FrontierEdge {
    std::size_t from;
    VertexKey to;
  };
  std::deque<FrontierEdge> frontier;
  auto push_edges = [&](std::size_t idx) {
    const VertexKey v = order[idx];
    for (auto& w : neighbors_in_edge_order(g, v)) {
      if (!in_cluster.contains(w)) frontier.push_back(FrontierEdge{idx, std::move(w)});
    }
  };
  push_edges(0);

  while (!frontier.empty()) {
    FrontierEdge e = std::move(frontier.front());
    frontier.pop_front();
    if (in_cluster.contains(e.to)) continue;  // no longer a boundary edge
    const bool open = edge_uniform(g, cfg, order[e.from], e.to) < cfg.p;
    if (open && order.size() >= vertex_budget) {
      r.status = ClusterStatus::kBudgetExceeded;
      finish(r, std::move(order));
      return r;
    }
    ++r.examined_count;
    if (record_trace) r.trace.push_back(open ? 1 : 0);
    if (open) {
      ++r.accepted_count;
      in_cluster.insert(e.to);
      order.push_back(std::move(e.to));
      push_edges(order.size() - 1);
    } else {
      ++r.rejected_count;
    }
  }

  r.status = ClusterStatus::kFinite;
  for (const auto& v : order) {
    for (const auto& w : g.neighbors(v)) {
      if (!in_cluster.contains(w)) {
        ++r.closed_boundary_count;
      } else if (v < w && edge_uniform(g, cfg, v, w) < cfg.p) {
        ++r.open_edge_count;
      }
    }
  }
  finish(r, std::move(order));
  return r;
}

ClusterReport site_explore_cluster(const GraphOracle& g, const PercolationConfig& cfg, const VertexKey& start,
                                   std::size_t vertex_budget, bool record_trace) {
  if (cfg.mode != PercolationMode::kSite) throw ModeMismatch("site_explore_cluster needs site percolation");
  if (vertex_budget == 0) throw std::invalid_argument("vertex budget must be positive");
  cfg.check();
  g.validate(start);

  ClusterReport r;
  if (vertex_uniform(g, cfg, start) >= cfg.p) return r;  // closed start: empty cluster

  KeySet examined{start};
  std::vector<VertexKey> order{start};
  std::deque<VertexKey> frontier;
  auto push_vertices = [&](const VertexKey& v) {
    auto ns = g.neighbors(v);
    std::sort(ns.begin(), ns.end());
    for (auto& w : ns)
      if (!examined.contains(w)) frontier.push_back(std::move(w));
  };
  push_vertices(start);

  while (!frontier.empty()) {
    VertexKey w = std::move(frontier.front());
    frontier.pop_front();
    if (examined.contains(w)) continue;
    const bool open = vertex_uniform(g, cfg, w) < cfg.p;
    if (open && order.size() >= vertex_budget) {
      r.status = ClusterStatus::kBudgetExceeded;
      finish(r, std::move(order));
      return r;
    }
    examined.insert(w);
    ++r.examined_count;
    if (record_trace) r.trace.push_back(open ? 1 : 0);
    if (open) {
      ++r.accepted_count;
      order.push_back(w);
      push_vertices(w);
    } else {
      ++r.rejected_count;
    }
  }
  r.status = ClusterStatus::kFinite;
  r.closed_boundary_count = r.rejected_count;
  // Induced open subgraph on V(H): every edge between open vertices.
  KeySet members(order.begin(), order.end());
  for (const auto& v : order)
    for (const auto& w : g.neighbors(v))
      if (v < w && members.contains(w)) ++r.open_edge_count;
  finish(r, std::move(order));
  return r;
}

TreeClusterSummary explore_tree_cluster(const TreeOracle& tree, const PercolationConfig& cfg,
                                        std::size_t vertex_budget) {
  if (vertex_budget == 0) throw std::invalid_argument("vertex budget must be positive");
  cfg.check();
  TreeClusterSummary s;
  const bool site = cfg.mode == PercolationMode::kSite;
  const Fingerprint root = kFingerprintInit;
  if (site && !vertex_open_fp(cfg, root)) return s;

  std::vector<Fingerprint> queue;
  queue.reserve(std::min<std::size_t>(vertex_budget, 1 << 16));
  queue.push_back(root);
  s.size = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Fingerprint h = queue[head];
    const std::uint32_t children = head == 0 ? tree.root_children() : tree.branching();
    for (std::uint32_t c = 0; c < children; ++c) {
      const Fingerprint child = fold_byte(h, static_cast<std::uint8_t>(c));
      const bool open = site ? vertex_open_fp(cfg, child) : edge_open_fp(cfg, combine_ordered(h, child));
      if (open && s.size >= vertex_budget) {
        s.status = ClusterStatus::kBudgetExceeded;
        s.closed_boundary_count = 0;
        return s;
      }
      ++s.examined_count;
      if (open) {
        ++s.size;
        queue.push_back(child);
      } else {
        ++s.closed_boundary_count;
      }
    }
  }
  return s;
}

TreeClusterSummary explore_basepoint_cluster(const GraphOracle& g, const PercolationConfig& cfg,
                                             std::size_t vertex_budget) {
  if (const auto* tree = dynamic_cast<const TreeOracle*>(&g)) return explore_tree_cluster(*tree, cfg, vertex_budget);
  const auto r = cfg.mode == PercolationMode::kBond ? explore_cluster(g, cfg, g.basepoint(), vertex_budget, false)
                                                     : site_explore_cluster(g, cfg, g.basepoint(), vertex_budget, false);
  TreeClusterSummary s;
  s.status = r.status;
  s.size = r.vertices.size();
  s.closed_boundary_count = r.finite() ? r.closed_boundary_count : 0;
  s.examined_count = r.examined_count;
  return s;
}

double BoundaryHistogram::frequency(std::size_t n) const {
  auto it = finite_counts.find(n);
  if (it == finite_counts.end() || trials == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(trials);
}

BoundaryHistogram boundary_tail_histogram(const GraphOracle& g, double p, std::uint64_t trials, std::size_t budget,
                                          std::uint64_t master_seed, unsigned workers) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
  std::vector<TreeClusterSummary> results(trials);
  parallel_for(trials, workers, [&](std::uint64_t i) {
    PercolationConfig cfg{p, PercolationMode::kBond, trial_seed(master_seed, i)};
    results[i] = explore_basepoint_cluster(g, cfg, budget);
  });
  BoundaryHistogram h;
  h.trials = trials;
  for (const auto& r : results) {
    if (r.status == ClusterStatus::kFinite) {
      ++h.finite_counts[r.closed_boundary_count];
    } else {
      ++h.survived;
    }
  }
  return h;
}

std::vector<SurvivalPoint> survival_curve(const GraphOracle& g, PercolationMode mode, const std::vector<double>& ps,
                                          std::uint64_t trials, std::size_t budget, std::uint64_t master_seed,
                                          unsigned workers) {
  std::vector<SurvivalPoint> curve;
  curve.reserve(ps.size());
  for (double p : ps) {
    std::vector<TreeClusterSummary> results(trials);
    // Trial seeds are shared across p: the monotone coupling makes the curve
    // nondecreasing trial by trial.
    parallel_for(trials, workers, [&](std::uint64_t i) {
      PercolationConfig cfg{p, mode, trial_seed(master_seed, i)};
      results[i] = explore_basepoint_cluster(g, cfg, budget);
    });
    SurvivalPoint pt;
    pt.p = p;
    pt.trials = trials;
    double size_sum = 0.0;
    std::uint64_t finite = 0;
    for (const auto& r : results) {
      if (r.status == ClusterStatus::kBudgetExceeded) {
        ++pt.survived;
      } else {
        size_sum += static_cast<double>(r.size);
        ++finite;
      }
    }
    pt.mean_finite_size = finite ? size_sum / static_cast<double>(finite) : 0.0;
    curve.push_back(pt);
  }
  return curve;
}

std::optional<double> survival_onset(const std::vector<SurvivalPoint>& curve, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& pt : curve) {
    const double f = pt.frequency();
    if (f < lo || f > hi) continue;
    sx += pt.p;
    sy += f;
    sxx += pt.p * pt.p;
    sxy += pt.p * f;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom <= 0.0) return std::nullopt;
  const double slope = (dn * sxy - sx * sy) / denom;
  if (slope <= 0.0) return std::nullopt;
  const double intercept = (sy - slope * sx) / dn;
  return -intercept / slope;
}

}  // namespace anchored
