#include "anchored/families.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace anchored {

namespace {

std::string path_string(std::string_view bytes) {
  if (bytes.empty()) return "root";
  std::string out;
  for (char c : bytes) {
    if (!out.empty()) out += '.';
    out += std::to_string(static_cast<std::uint8_t>(c));
  }
  return out;
}

}  // namespace

VertexKey tree_key(Family family, std::span<const std::uint8_t> path) {
  return VertexKey{family, std::string(path.begin(), path.end())};
}

// ---------------------------------------------------------------------------
// Lattice

LatticeOracle::LatticeOracle(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw std::invalid_argument("lattice dimension must be positive");
}

std::string LatticeOracle::describe() const { return "Z^" + std::to_string(dimension_); }

VertexKey LatticeOracle::basepoint() const {
  std::vector<std::int64_t> zero(dimension_, 0);
  return lattice_key(zero);
}

void LatticeOracle::validate(const VertexKey& v) const { decode_lattice(v, dimension_); }

std::size_t LatticeOracle::degree(const VertexKey& v) const {
  validate(v);
  return 2 * dimension_;
}

VertexKey LatticeOracle::neighbor(const VertexKey& v, std::size_t i) const {
  auto x = decode_lattice(v, dimension_);
  if (i >= 2 * dimension_) throw std::out_of_range("neighbor index out of range");
  x[i / 2] += (i % 2 == 0) ? 1 : -1;
  return lattice_key(x);
}

std::vector<VertexKey> LatticeOracle::neighbors(const VertexKey& v) const {
  auto x = decode_lattice(v, dimension_);
  std::vector<VertexKey> out;
  out.reserve(2 * dimension_);
  for (std::size_t axis = 0; axis < dimension_; ++axis) {
    x[axis] += 1;
    out.push_back(lattice_key(x));
    x[axis] -= 2;
    out.push_back(lattice_key(x));
    x[axis] += 1;
  }
  return out;
}

std::optional<std::int64_t> LatticeOracle::distance_from_basepoint(const VertexKey& v) const {
  std::int64_t d = 0;
  for (auto c : decode_lattice(v, dimension_)) d += std::llabs(c);
  return d;
}

std::string LatticeOracle::format_vertex(const VertexKey& v) const {
  auto x = decode_lattice(v, dimension_);
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(x[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Trees

TreeOracle::TreeOracle(std::uint32_t branching, bool rooted) : branching_(branching), rooted_(rooted) {
  if (branching_ < 1 || branching_ > 254) throw std::invalid_argument("tree branching must be in [1, 254]");
}

std::string TreeOracle::describe() const {
  return (rooted_ ? "rooted-tree(b=" : "T_b(b=") + std::to_string(branching_) + ")";
}

VertexKey TreeOracle::basepoint() const { return VertexKey{family(), {}}; }

void TreeOracle::validate(const VertexKey& v) const {
  if (v.family != family()) throw DecodeError("vertex belongs to another family");
  for (std::size_t i = 0; i < v.bytes.size(); ++i) {
    const auto c = static_cast<std::uint8_t>(v.bytes[i]);
    if (c >= (i == 0 ? root_children() : branching_)) throw DecodeError("tree child index out of range");
  }
}

std::size_t TreeOracle::degree(const VertexKey& v) const {
  validate(v);
  return v.bytes.empty() ? root_children() : branching_ + 1;
}

std::vector<VertexKey> TreeOracle::neighbors(const VertexKey& v) const {
  validate(v);
  std::vector<VertexKey> out;
  const bool is_root = v.bytes.empty();
  const std::uint32_t children = is_root ? root_children() : branching_;
  out.reserve(children + 1);
  if (!is_root) out.push_back(VertexKey{family(), v.bytes.substr(0, v.bytes.size() - 1)});
  for (std::uint32_t c = 0; c < children; ++c) {
    VertexKey child{family(), v.bytes};
    child.bytes.push_back(static_cast<char>(c));
    out.push_back(std::move(child));
  }
  return out;
}

std::optional<std::int64_t> TreeOracle::distance_from_basepoint(const VertexKey& v) const {
  validate(v);
  return static_cast<std::int64_t>(v.bytes.size());
}

std::string TreeOracle::format_vertex(const VertexKey& v) const { return path_string(v.bytes); }

std::shared_ptr<const LatticeOracle> make_lattice(std::size_t dimension) {
  return std::make_shared<const LatticeOracle>(dimension);
}
std::shared_ptr<const TreeOracle> make_regular_tree(std::uint32_t b) {
  return std::make_shared<const TreeOracle>(b, false);
}
std::shared_ptr<const TreeOracle> make_rooted_tree(std::uint32_t b) {
  return std::make_shared<const TreeOracle>(b, true);
}

// ---------------------------------------------------------------------------
// Explicit finite graphs

FiniteGraphOracle::FiniteGraphOracle(FiniteGraph graph, std::uint32_t root) : graph_(std::move(graph)), root_(root) {
  if (root_ >= graph_.size()) throw std::invalid_argument("root out of range");
  for (std::uint32_t i = 0; i < graph_.size(); ++i) {
    if (graph_.vertices[i] != finite_key(i)) throw std::invalid_argument("finite oracle needs finite_key vertices");
  }
  if (root_ != 0) graph_ = FiniteGraph::from_edges(static_cast<std::uint32_t>(graph_.size()), graph_.edges, root_);
}

std::string FiniteGraphOracle::describe() const {
  return "finite(n=" + std::to_string(graph_.size()) + ",m=" + std::to_string(graph_.edges.size()) + ")";
}

VertexKey FiniteGraphOracle::basepoint() const { return finite_key(root_); }

void FiniteGraphOracle::validate(const VertexKey& v) const {
  if (decode_finite(v) >= graph_.size()) throw DecodeError("finite vertex out of range");
}

std::vector<VertexKey> FiniteGraphOracle::neighbors(const VertexKey& v) const {
  const auto i = decode_finite(v);
  if (i >= graph_.size()) throw DecodeError("finite vertex out of range");
  std::vector<VertexKey> out;
  out.reserve(graph_.adjacency[i].size());
  for (auto j : graph_.adjacency[i]) out.push_back(finite_key(j));
  return out;
}

std::optional<std::int64_t> FiniteGraphOracle::distance_from_basepoint(const VertexKey& v) const {
  const auto i = decode_finite(v);
  if (i >= graph_.size()) throw DecodeError("finite vertex out of range");
  if (graph_.distance[i] == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  return graph_.distance[i];
}

// ---------------------------------------------------------------------------
// Galton-Watson

GaltonWatsonOracle::GaltonWatsonOracle(OffspringDistribution law, std::uint64_t seed)
    : law_(std::move(law)), seed_(seed) {}

std::string GaltonWatsonOracle::describe() const {
  std::string out = "GW(";
  for (std::size_t k = 0; k < law_.probs().size(); ++k) {
    if (k) out += ',';
    out += std::to_string(law_.probs()[k]);
  }
  return out + ";seed=" + std::to_string(seed_) + ")";
}

VertexKey GaltonWatsonOracle::basepoint() const { return VertexKey{Family::kGaltonWatson, {}}; }

std::size_t GaltonWatsonOracle::child_count_unchecked(std::string_view path) const {
  return law_.sample(prf_uniform(seed_, PrfDomain::kOffspring, fingerprint_bytes(path)));
}

void GaltonWatsonOracle::validate(const VertexKey& v) const {
  if (v.family != Family::kGaltonWatson) throw DecodeError("vertex belongs to another family");
  Fingerprint h = kFingerprintInit;
  for (char c : v.bytes) {
    const auto children = law_.sample(prf_uniform(seed_, PrfDomain::kOffspring, h));
    if (static_cast<std::uint8_t>(c) >= children) throw DecodeError("Galton-Watson vertex does not exist");
    h = fold_byte(h, static_cast<std::uint8_t>(c));
  }
}

std::size_t GaltonWatsonOracle::child_count(const VertexKey& v) const {
  validate(v);
  return child_count_unchecked(v.bytes);
}

std::vector<VertexKey> GaltonWatsonOracle::neighbors(const VertexKey& v) const {
  validate(v);
  std::vector<VertexKey> out;
  if (!v.bytes.empty()) out.push_back(VertexKey{Family::kGaltonWatson, v.bytes.substr(0, v.bytes.size() - 1)});
  const auto children = child_count_unchecked(v.bytes);
  for (std::size_t c = 0; c < children; ++c) {
    VertexKey child{Family::kGaltonWatson, v.bytes};
    child.bytes.push_back(static_cast<char>(c));
    out.push_back(std::move(child));
  }
  return out;
}

std::optional<std::int64_t> GaltonWatsonOracle::distance_from_basepoint(const VertexKey& v) const {
  validate(v);
  return static_cast<std::int64_t>(v.bytes.size());
}

std::string GaltonWatsonOracle::format_vertex(const VertexKey& v) const { return path_string(v.bytes); }

}  // namespace anchored
