#include "anchored/lamplighter_metric.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "anchored/families.hpp"

namespace anchored {

std::int64_t lamplighter_distance_d1(const LamplighterOracle& w, const LampState& s) {
  const auto* lattice = dynamic_cast<const LatticeOracle*>(&w.base());
  if (!lattice || lattice->dimension() != 1) throw std::invalid_argument("closed-form distance needs base Z^1");
  const std::int64_t m = decode_lattice(s.marker, 1)[0];
  std::int64_t a = std::min<std::int64_t>(0, m), b = std::max<std::int64_t>(0, m);
  std::int64_t switches = 0;
  for (const auto& [x, value] : s.lamps) {
    const auto c = decode_lattice(x, 1)[0];
    a = std::min(a, c);
    b = std::max(b, c);
    switches += w.group().norm(value);
  }
  return switches + (b - a) + std::min(-a + b - m, b + m - a);
}

std::int64_t base_distance(const GraphOracle& base, const VertexKey& v, std::size_t budget) {
  if (auto d = base.distance_from_basepoint(v)) return *d;
  const auto o = base.basepoint();
  if (v == o) return 0;
  std::unordered_map<VertexKey, std::int64_t, VertexKeyHash> dist{{o, 0}};
  std::deque<VertexKey> queue{o};
  while (!queue.empty()) {
    auto u = std::move(queue.front());
    queue.pop_front();
    const auto du = dist[u];
    for (auto& x : base.neighbors(u)) {
      if (dist.contains(x)) continue;
      if (x == v) return du + 1;
      if (dist.size() >= budget) throw BudgetExceeded("distance search vertex", budget);
      dist.emplace(x, du + 1);
      queue.push_back(std::move(x));
    }
  }
  throw std::invalid_argument("vertex not connected to the basepoint");
}

namespace {

std::int64_t norm_sum(const LamplighterOracle& w, const LampState& s) {
  std::int64_t total = 0;
  for (const auto& [x, value] : s.lamps) total += w.group().norm(value);
  return total;
}

using KeySet = std::unordered_set<VertexKey, VertexKeyHash>;

}  // namespace

DistanceBounds lamplighter_distance_bounds(const LamplighterOracle& w, const LampState& s, std::size_t budget) {
  const auto& base = w.base();
  const auto m = base_distance(base, s.marker, budget);
  const auto lamps = norm_sum(w, s);
  std::set<VertexKey> pending;
  pending.insert(s.marker);
  for (const auto& [x, value] : s.lamps) pending.insert(x);
  const auto o = base.basepoint();
  pending.erase(o);

  // Greedy Steiner tree: search outward from the whole current tree and
  // splice in the path to the first terminal reached.
  KeySet tree{o};
  std::size_t searched = 0;
  while (!pending.empty()) {
    std::unordered_map<VertexKey, VertexKey, VertexKeyHash> parent;
    std::deque<VertexKey> queue(tree.begin(), tree.end());
    std::sort(queue.begin(), queue.end());
    KeySet seen(tree.begin(), tree.end());
    std::optional<VertexKey> hit;
    while (!queue.empty() && !hit) {
      auto u = std::move(queue.front());
      queue.pop_front();
      for (auto& x : base.neighbors(u)) {
        if (seen.contains(x)) continue;
        if (++searched > budget) throw BudgetExceeded("distance bound search vertex", budget);
        seen.insert(x);
        parent.emplace(x, u);
        if (pending.contains(x)) {
          hit = x;
          break;
        }
        queue.push_back(std::move(x));
      }
    }
    if (!hit) throw std::invalid_argument("lit site not connected to the basepoint");
    for (VertexKey v = *hit; !tree.contains(v); v = parent.at(v)) {
      tree.insert(v);
      pending.erase(v);
    }
  }
  const auto t = static_cast<std::int64_t>(tree.size());
  return DistanceBounds{m + lamps, m + 2 * t + lamps};
}

DistanceBounds lamplighter_distance_bounds(const LamplighterOracle& w, const LampState& s, const KeySet& region) {
  const auto& base = w.base();
  const auto o = base.basepoint();
  if (!region.contains(o) || !region.contains(s.marker)) throw std::invalid_argument("region misses a terminal");
  std::unordered_map<VertexKey, const VertexKey*, VertexKeyHash> parent{{o, nullptr}};
  std::deque<const VertexKey*> queue{&*region.find(o)};
  while (!queue.empty()) {
    const VertexKey* u = queue.front();
    queue.pop_front();
    for (const auto& x : base.neighbors(*u)) {
      auto it = region.find(x);
      if (it == region.end() || parent.contains(x)) continue;
      parent.emplace(*it, u);
      queue.push_back(&*it);
    }
  }
  KeySet kept{o};
  auto keep_path = [&](const VertexKey& v) {
    auto it = parent.find(v);
    if (it == parent.end()) throw std::invalid_argument("terminal outside the connected region");
    const VertexKey* cur = &it->first;
    while (cur && kept.insert(*cur).second) cur = parent.at(*cur);
  };
  keep_path(s.marker);
  for (const auto& [x, value] : s.lamps) keep_path(x);
  const auto m = base_distance(base, s.marker);
  const auto lamps = norm_sum(w, s);
  return DistanceBounds{m + lamps, m + 2 * static_cast<std::int64_t>(kept.size()) + lamps};
}

}  // namespace anchored
