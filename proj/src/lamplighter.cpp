#include "anchored/lamplighter.hpp"

#include <algorithm>
#include <stdexcept>

#include "anchored/families.hpp"

namespace anchored {

namespace {
constexpr std::uint64_t kStateTag = 0x4c414d5053544154ULL;
constexpr std::uint64_t kMoveTag = 0x4c414d504d4f5645ULL;
constexpr std::uint64_t kSwitchTag = 0x4c414d5053574954ULL;
}  // namespace

VertexKey encode_lamp_state(const LampState& s) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(s.marker.family));
  w.blob(s.marker.bytes);
  w.varint(s.lamps.size());
  for (const auto& [x, value] : s.lamps) {
    if (x.family != s.marker.family) throw std::invalid_argument("lamp site from another family");
    if (value == FiniteGroupGraph::identity()) throw std::invalid_argument("identity lamp must not be stored");
    w.blob(x.bytes);
    w.varint(value);
  }
  return VertexKey{Family::kLamplighter, w.take()};
}

LampState decode_lamp_state(const VertexKey& key) {
  if (key.family != Family::kLamplighter) throw DecodeError("not a lamplighter vertex");
  ByteReader r(key.bytes);
  LampState s;
  const auto fam = static_cast<Family>(r.u8());
  s.marker = VertexKey{fam, std::string(r.blob())};
  const auto count = r.varint();
  const VertexKey* prev = nullptr;
  for (std::uint64_t i = 0; i < count; ++i) {
    VertexKey x{fam, std::string(r.blob())};
    const auto value = r.varint();
    if (value == 0 || value > 0xffffffffULL) throw DecodeError("bad lamp value");
    if (prev && !(*prev < x)) throw DecodeError("lamp sites not strictly increasing");
    auto [it, ok] = s.lamps.emplace(std::move(x), static_cast<GroupElement>(value));
    prev = &it->first;
  }
  r.expect_done();
  return s;
}

LamplighterOracle::LamplighterOracle(OraclePtr base, FiniteGroupGraph group)
    : base_(std::move(base)), group_(std::move(group)) {
  if (!base_) throw std::invalid_argument("lamplighter needs a base oracle");
}

std::string LamplighterOracle::describe() const {
  return "lamplighter(" + base_->describe() + ",|F|=" + std::to_string(group_.order()) + ")";
}

VertexKey LamplighterOracle::basepoint() const { return encode_lamp_state(LampState{base_->basepoint(), {}}); }

void LamplighterOracle::validate_state(const LampState& s) const {
  base_->validate(s.marker);
  for (const auto& [x, value] : s.lamps) {
    base_->validate(x);
    if (value >= group_.order()) throw DecodeError("lamp value outside the group");
  }
}

void LamplighterOracle::validate(const VertexKey& v) const { validate_state(decode_lamp_state(v)); }

std::size_t LamplighterOracle::degree(const VertexKey& v) const {
  const auto s = decode_lamp_state(v);
  validate_state(s);
  return base_->degree(s.marker) + group_.generator_count();
}

std::vector<LampState> LamplighterOracle::neighbor_states(const LampState& s) const {
  std::vector<LampState> out;
  for (auto& m : base_->neighbors(s.marker)) out.push_back(LampState{std::move(m), s.lamps});
  const auto current = s.lamp(s.marker);
  for (std::size_t i = 0; i < group_.generator_count(); ++i) {
    LampState t = s;
    t.set_lamp(s.marker, group_.neighbor(current, i));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<VertexKey> LamplighterOracle::neighbors(const VertexKey& v) const {
  const auto s = decode_lamp_state(v);
  validate_state(s);
  std::vector<VertexKey> out;
  for (const auto& t : neighbor_states(s)) out.push_back(encode_lamp_state(t));
  return out;
}

Fingerprint LamplighterOracle::lamp_term(Fingerprint site_fingerprint, GroupElement value) const noexcept {
  return mix64(site_fingerprint ^ mix64(static_cast<std::uint64_t>(value) * 0xd6e8feb86659fd93ULL + 0x7b));
}

Fingerprint LamplighterOracle::config_digest(const LampState& s) const {
  Fingerprint h = 0;
  for (const auto& [x, value] : s.lamps) h += lamp_term(base_->vertex_fingerprint(x), value);
  return h;
}

Fingerprint LamplighterOracle::state_fingerprint(Fingerprint digest, Fingerprint marker_fp) const noexcept {
  return combine_ordered(digest ^ kStateTag, marker_fp);
}

Fingerprint LamplighterOracle::move_edge_fingerprint(Fingerprint digest, Fingerprint base_edge_fp) const noexcept {
  return combine_ordered(digest ^ kMoveTag, base_edge_fp);
}

Fingerprint LamplighterOracle::lamp_edge_fingerprint(Fingerprint digest_off_marker, Fingerprint marker_fp,
                                                     GroupElement a, GroupElement b) const noexcept {
  const auto lo = std::min(a, b);
  const auto hi = std::max(a, b);
  const auto pair = (static_cast<std::uint64_t>(lo) << 32) | hi;
  return combine_ordered(digest_off_marker ^ kSwitchTag, mix64(marker_fp + mix64(pair)));
}

Fingerprint LamplighterOracle::vertex_fingerprint(const VertexKey& v) const {
  const auto s = decode_lamp_state(v);
  return state_fingerprint(config_digest(s), base_->vertex_fingerprint(s.marker));
}

Fingerprint LamplighterOracle::edge_fingerprint(const VertexKey& u, const VertexKey& v) const {
  const auto a = decode_lamp_state(u);
  const auto b = decode_lamp_state(v);
  if (a.marker == b.marker) {
    // Switch edge: configurations agree off the marker.
    const auto marker_fp = base_->vertex_fingerprint(a.marker);
    auto digest = config_digest(a);
    const auto va = a.lamp(a.marker);
    const auto vb = b.lamp(b.marker);
    if (va == vb) throw std::invalid_argument("not a lamplighter edge");
    if (va != FiniteGroupGraph::identity()) digest -= lamp_term(marker_fp, va);
    return lamp_edge_fingerprint(digest, marker_fp, va, vb);
  }
  if (a.lamps != b.lamps) throw std::invalid_argument("not a lamplighter edge");
  return move_edge_fingerprint(config_digest(a), base_->edge_fingerprint(a.marker, b.marker));
}

std::string LamplighterOracle::format_vertex(const VertexKey& v) const {
  const auto s = decode_lamp_state(v);
  std::string out = "(" + base_->format_vertex(s.marker) + ",{";
  bool first = true;
  for (const auto& [x, value] : s.lamps) {
    if (!first) out += ',';
    first = false;
    out += base_->format_vertex(x);
    if (group_.order() > 2) out += ":" + std::to_string(value);
  }
  return out + "})";
}

std::shared_ptr<const LamplighterOracle> make_lamplighter(OraclePtr base, FiniteGroupGraph group) {
  return std::make_shared<const LamplighterOracle>(std::move(base), std::move(group));
}

std::shared_ptr<const LamplighterOracle> make_lamplighter_zd(std::size_t d) {
  return make_lamplighter(make_lattice(d), FiniteGroupGraph::cyclic(2));
}

}  // namespace anchored
