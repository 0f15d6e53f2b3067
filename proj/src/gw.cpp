#include "anchored/gw.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "anchored/parallel.hpp"

namespace anchored {

double extinction_probability(const OffspringDistribution& law, double tol, std::vector<double>* iterates) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (iterates) iterates->assign(1, 0.0);
  if (law.prob(0) == 0.0) return 0.0;
  if (!law.supercritical()) return 1.0;
  double s = 0.0;
  for (std::size_t it = 0; it < 100'000'000; ++it) {
    const double next = law.generating_function(s);
    if (iterates) iterates->push_back(next);
    if (std::abs(next - s) < tol) return next;
    s = next;
  }
  throw std::runtime_error("extinction iteration did not converge");
}

BackboneDecomposition backbone_decompose(const OffspringDistribution& law, double tol) {
  if (!law.supercritical()) throw std::domain_error("backbone needs a supercritical law (q < 1)");
  BackboneDecomposition d{extinction_probability(law, tol), law, std::nullopt, 1.0};
  const double q = d.q;
  d.gap_parameter = 1.0 - q;
  const auto& p = law.probs();
  std::vector<double> backbone(p.size(), 0.0), bush(p.size(), 0.0);
  double bsum = 0.0, hsum = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    backbone[k] = p[k] * (1.0 - std::pow(q, static_cast<double>(k))) / (1.0 - q);
    bsum += backbone[k];
  }
  for (auto& x : backbone) x /= bsum;  // exact up to the fixed-point residual
  d.backbone = OffspringDistribution(std::move(backbone));
  if (q > 0.0) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      bush[k] = p[k] * std::pow(q, static_cast<double>(k) - 1.0);
      hsum += bush[k];
    }
    for (auto& x : bush) x /= hsum;
    d.bush = OffspringDistribution(std::move(bush));
  }
  return d;
}

PlaneTree sample_tree(const OffspringDistribution& law, std::uint64_t seed, std::size_t max_vertices) {
  if (max_vertices == 0) throw std::invalid_argument("max_vertices must be positive");
  PlaneTree t;
  std::vector<Fingerprint> fps{kFingerprintInit};
  for (std::size_t head = 0; head < fps.size(); ++head) {
    const Fingerprint h = fps[head];
    const auto k = law.sample(prf_uniform(seed, PrfDomain::kOffspring, h));
    if (fps.size() + k > max_vertices) {
      t.truncated = true;
      break;
    }
    t.child_counts.push_back(static_cast<std::uint32_t>(k));
    for (std::size_t c = 0; c < k; ++c) fps.push_back(fold_byte(h, static_cast<std::uint8_t>(c)));
  }
  t.vertices = fps.size();
  return t;
}

std::size_t tree_depth(const PlaneTree& t) {
  std::vector<std::size_t> depth(t.vertices, 0);
  std::size_t next = 1, best = 0;
  for (std::size_t v = 0; v < t.child_counts.size(); ++v) {
    for (std::uint32_t c = 0; c < t.child_counts[v] && next < t.vertices; ++c) {
      depth[next] = depth[v] + 1;
      best = std::max(best, depth[next]);
      ++next;
    }
  }
  return best;
}

std::string depth_shape(const PlaneTree& t, std::size_t depth) {
  std::string out;
  std::size_t level_begin = 0, level_end = 1, next = 1;
  for (std::size_t d = 0; d < depth && level_begin < level_end; ++d) {
    for (std::size_t v = level_begin; v < level_end; ++v) {
      if (v >= t.child_counts.size()) throw std::invalid_argument("tree truncated above the requested depth");
      if (!out.empty()) out += ',';
      out += std::to_string(t.child_counts[v]);
      next += t.child_counts[v];
    }
    level_begin = level_end;
    level_end = next;
  }
  return out;
}

std::optional<std::size_t> total_progeny(const OffspringDistribution& law, Rng& rng, std::size_t budget,
                                         std::size_t population_cap) {
  std::size_t population = 1, total = 1;
  while (population > 0) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < population; ++i) next += law.sample(rng.uniform01());
    if (next > population_cap) return std::nullopt;
    total += next;
    if (total > budget) return std::nullopt;
    population = next;
  }
  return total;
}

SizeTail conditioned_finite_size_tail(const OffspringDistribution& law, std::uint64_t trials, std::uint64_t seed,
                                      std::size_t size_budget, std::uint64_t min_count, unsigned workers) {
  const auto dec = backbone_decompose(law);
  if (!dec.bush) throw std::domain_error("q = 0: trees never die out, nothing to condition on");
  const auto& bush = *dec.bush;
  std::vector<std::optional<std::size_t>> sizes(trials);
  parallel_for(trials, workers, [&](std::uint64_t i) {
    Rng rng(trial_seed(seed, i));
    sizes[i] = total_progeny(bush, rng, size_budget, std::numeric_limits<std::size_t>::max());
  });
  SizeTail r;
  r.trials = trials;
  r.bush_mean = bush.mean();
  for (const auto& s : sizes) {
    if (s) {
      ++r.size_counts[*s];
    } else {
      ++r.truncated;
    }
  }
  // Truncated trials are larger than every recorded size.
  std::uint64_t at_least = trials;
  std::vector<double> xs, ys;
  std::size_t s_prev = 0;
  for (const auto& [s, c] : r.size_counts) {
    // Sizes skipped since the last one share its tail value.
    for (std::size_t gap = s_prev + 1; gap < s; ++gap) r.tail.emplace_back(gap, static_cast<double>(at_least) / trials);
    r.tail.emplace_back(s, static_cast<double>(at_least) / static_cast<double>(trials));
    if (s >= 2 && at_least >= min_count) {
      xs.push_back(static_cast<double>(s));
      ys.push_back(std::log(static_cast<double>(at_least) / static_cast<double>(trials)));
    }
    at_least -= c;
    s_prev = s;
  }
  if (xs.size() >= 3) r.log_tail_fit = linear_fit(xs, ys);
  return r;
}

std::map<std::size_t, std::uint64_t> rejection_finite_sizes(const OffspringDistribution& law, std::uint64_t trials,
                                                            std::uint64_t seed, std::size_t size_budget,
                                                            std::size_t population_cap, unsigned workers) {
  std::vector<std::optional<std::size_t>> sizes(trials);
  parallel_for(trials, workers, [&](std::uint64_t i) {
    Rng rng(trial_seed(seed, i));
    sizes[i] = total_progeny(law, rng, size_budget, population_cap);
  });
  std::map<std::size_t, std::uint64_t> out;
  for (const auto& s : sizes)
    if (s) ++out[*s];
  return out;
}

StretchView geometric_stretch_view(const OffspringDistribution& law) {
  const double p0 = law.prob(0), p1 = law.prob(1);
  if (p0 > 0.0) throw std::domain_error("stretch view needs p_0 = 0");
  if (p1 == 0.0) return StretchView{law, ConstantLength{1}};
  if (p1 >= 1.0) throw std::domain_error("stretch view needs p_1 < 1");
  std::vector<double> reduced = law.probs();
  reduced[1] = 0.0;
  for (auto& x : reduced) x /= (1.0 - p1);
  return StretchView{OffspringDistribution(std::move(reduced)), GeometricLength{1.0 - p1}};
}

namespace {

void append_count(std::string& out, std::size_t k) {
  if (!out.empty()) out += ',';
  out += std::to_string(k);
}

}  // namespace

std::string sample_direct_shape(const OffspringDistribution& law, Rng& rng, std::size_t depth) {
  std::string out;
  std::size_t population = 1;
  for (std::size_t d = 0; d < depth && population > 0; ++d) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < population; ++i) {
      const auto k = law.sample(rng.uniform01());
      append_count(out, k);
      next += k;
    }
    population = next;
  }
  return out;
}

std::string sample_stretch_shape(const StretchView& view, Rng& rng, std::size_t depth) {
  const StretchDescriptor nu(view.nu, 0);
  // Each vertex carries the number of single-child steps left before the
  // next branching vertex of the reduced tree.
  std::vector<std::uint64_t> level{nu.sample(rng.uniform01()) - 1}, next;
  std::string out;
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    next.clear();
    for (auto remaining : level) {
      if (remaining > 0) {
        append_count(out, 1);
        next.push_back(remaining - 1);
      } else {
        const auto k = view.reduced.sample(rng.uniform01());
        append_count(out, k);
        for (std::size_t c = 0; c < k; ++c) next.push_back(nu.sample(rng.uniform01()) - 1);
      }
    }
    level.swap(next);
  }
  return out;
}

std::string sample_backbone_shape(const BackboneDecomposition& dec, Rng& rng, std::size_t depth) {
  const double open_prob = dec.gap_parameter;
  std::vector<bool> level{true}, next;  // true = open (on the backbone)
  std::vector<bool> draw;
  std::string out;
  for (std::size_t d = 0; d < depth && !level.empty(); ++d) {
    next.clear();
    for (bool open : level) {
      if (open) {
        const auto k = dec.backbone.sample(rng.uniform01());
        append_count(out, k);
        bool any_open = false;
        while (!any_open) {
          draw.assign(k, false);
          for (std::size_t c = 0; c < k; ++c) {
            draw[c] = rng.uniform01() < open_prob;
            any_open = any_open || draw[c];
          }
        }
        next.insert(next.end(), draw.begin(), draw.end());
      } else {
        const auto k = dec.bush->sample(rng.uniform01());
        append_count(out, k);
        next.insert(next.end(), k, false);
      }
    }
    level.swap(next);
  }
  return out;
}

std::string sample_surviving_shape(const OffspringDistribution& law, Rng& rng, std::size_t depth,
                                   std::size_t population_cap, std::uint64_t* rejected) {
  if (!law.supercritical()) throw std::domain_error("survival conditioning needs a supercritical law");
  for (;;) {
    std::string out;
    std::size_t population = 1;
    for (std::size_t d = 0; population > 0 && population <= population_cap; ++d) {
      std::size_t next = 0;
      for (std::size_t i = 0; i < population; ++i) {
        const auto k = law.sample(rng.uniform01());
        if (d < depth) append_count(out, k);
        next += k;
      }
      population = next;
    }
    if (population > 0) return out;
    if (rejected) ++*rejected;
  }
}

}  // namespace anchored
