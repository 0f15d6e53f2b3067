#include "anchored/enumeration.hpp"

#include <algorithm>
#include <stdexcept>

namespace anchored {

namespace {

enum class Slot : std::uint8_t { kFree, kMember, kCandidate, kBanned };

// Shared state of one enumeration. Candidate lists of all open recursion
// levels live in one arena; a level owns the suffix [begin, end).
class Enumerator {
 public:
  Enumerator(const FiniteGraph& g, std::size_t max_size, const ConnectedSetVisitor& visit, std::uint64_t budget,
             std::function<double()> estimate)
      : g_(g),
        max_size_(max_size),
        visit_(visit),
        budget_(budget),
        estimate_(std::move(estimate)),
        slot_(g.size(), Slot::kFree),
        cover_(g.size(), 0) {}

  void run(std::uint32_t root) {
    add(root);
    const std::size_t begin = arena_.size();
    push_new_candidates(root);
    recurse(begin, arena_.size());
  }

 private:
  void add(std::uint32_t v) {
    if (cover_[v] > 0) --vertex_boundary_;
    edge_boundary_ += g_.ambient_degree[v];
    edge_boundary_ -= 2 * static_cast<std::size_t>(cover_[v]);
    slot_[v] = Slot::kMember;
    members_.push_back(v);
    for (auto w : g_.adjacency[v]) {
      if (slot_[w] != Slot::kMember && cover_[w] == 0) ++vertex_boundary_;
      ++cover_[w];
    }
  }

  void remove(std::uint32_t v) {
    for (auto w : g_.adjacency[v]) {
      --cover_[w];
      if (slot_[w] != Slot::kMember && cover_[w] == 0) --vertex_boundary_;
    }
    members_.pop_back();
    edge_boundary_ += 2 * static_cast<std::size_t>(cover_[v]);
    edge_boundary_ -= g_.ambient_degree[v];
    if (cover_[v] > 0) ++vertex_boundary_;
  }

  void push_new_candidates(std::uint32_t v) {
    for (auto w : g_.adjacency[v]) {
      if (slot_[w] == Slot::kFree) {
        slot_[w] = Slot::kCandidate;
        arena_.push_back(w);
      }
    }
  }

  void emit() {
    if (++emitted_ > budget_) throw EnumerationBudgetExceeded(budget_, estimate_());
    visit_(ConnectedSetView{members_, edge_boundary_, vertex_boundary_});
  }

  void recurse(std::size_t begin, std::size_t end) {
    emit();
    if (members_.size() == max_size_) return;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t c = arena_[i];
      add(c);
      const std::size_t child_begin = arena_.size();
      for (std::size_t j = i + 1; j < end; ++j) arena_.push_back(arena_[j]);
      const std::size_t inherited_end = arena_.size();
      push_new_candidates(c);
      recurse(child_begin, arena_.size());
      for (std::size_t j = inherited_end; j < arena_.size(); ++j) slot_[arena_[j]] = Slot::kFree;
      arena_.resize(child_begin);
      remove(c);
      slot_[c] = Slot::kBanned;
    }
    for (std::size_t i = begin; i < end; ++i) slot_[arena_[i]] = Slot::kCandidate;
  }

  const FiniteGraph& g_;
  std::size_t max_size_;
  const ConnectedSetVisitor& visit_;
  std::uint64_t budget_;
  std::function<double()> estimate_;  // only evaluated on failure
  std::uint64_t emitted_ = 0;
  std::vector<Slot> slot_;
  std::vector<std::uint32_t> cover_;  // number of member neighbors
  std::vector<std::uint32_t> members_;
  std::vector<std::uint32_t> arena_;
  std::size_t edge_boundary_ = 0;
  std::size_t vertex_boundary_ = 0;
};

void check_args(const FiniteGraph& g, std::uint32_t root, std::size_t max_size) {
  if (root >= g.size()) throw std::invalid_argument("enumeration root out of range");
  if (max_size == 0) throw std::invalid_argument("max_size must be at least 1");
}

}  // namespace

void enumerate_connected_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size,
                              const ConnectedSetVisitor& visit, std::uint64_t budget) {
  check_args(g, root, max_size);
  Enumerator e(g, max_size, visit, budget, [&] { return estimate_connected_sets(g, root, max_size, 256, 0x5eed); });
  e.run(root);
}

double estimate_connected_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size, std::size_t probes,
                               std::uint64_t seed) {
  check_args(g, root, max_size);
  if (probes == 0) throw std::invalid_argument("probes must be positive");
  Rng rng(seed);
  std::vector<Slot> slot(g.size(), Slot::kFree);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> candidates;
  double total = 0.0;
  for (std::size_t probe = 0; probe < probes; ++probe) {
    for (auto v : touched) slot[v] = Slot::kFree;
    touched.clear();
    candidates.clear();
    auto extend = [&](std::uint32_t v) {
      slot[v] = Slot::kMember;
      touched.push_back(v);
      for (auto w : g.adjacency[v]) {
        if (slot[w] == Slot::kFree) {
          slot[w] = Slot::kCandidate;
          touched.push_back(w);
          candidates.push_back(w);
        }
      }
    };
    extend(root);
    double weight = 1.0;
    double estimate = 1.0;
    for (std::size_t size = 1; size < max_size && !candidates.empty(); ++size) {
      weight *= static_cast<double>(candidates.size());
      estimate += weight;
      const auto i = static_cast<std::size_t>(rng.below(candidates.size()));
      const std::uint32_t c = candidates[i];
      for (std::size_t j = 0; j < i; ++j) slot[candidates[j]] = Slot::kBanned;
      candidates.erase(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      extend(c);
    }
    total += estimate;
  }
  return total / static_cast<double>(probes);
}

std::vector<ConnectedSet> collect_connected_sets(const FiniteGraph& g, std::uint32_t root, std::size_t max_size) {
  std::vector<ConnectedSet> out;
  enumerate_connected_sets(g, root, max_size, [&](const ConnectedSetView& s) {
    ConnectedSet c{{s.members.begin(), s.members.end()}, s.edge_boundary, s.vertex_boundary};
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace anchored
