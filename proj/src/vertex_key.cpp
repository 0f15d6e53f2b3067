#include "anchored/vertex_key.hpp"

namespace anchored {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kLattice: return "lattice";
    case Family::kRegularTree: return "regular-tree";
    case Family::kRootedTree: return "rooted-tree";
    case Family::kFinite: return "finite";
    case Family::kGaltonWatson: return "galton-watson";
    case Family::kStretch: return "stretch";
    case Family::kLamplighter: return "lamplighter";
  }
  return "unknown";
}

void ByteWriter::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::i64(std::int64_t v) {
  const std::uint64_t u = static_cast<std::uint64_t>(v) ^ (1ULL << 63);
  for (int shift = 56; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(u >> shift));
}

void ByteWriter::varint(std::uint64_t v) {
  while (v >= 0x80) {
    u8(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  u8(static_cast<std::uint8_t>(v));
}

std::uint8_t ByteReader::u8() {
  if (pos_ >= in_.size()) throw DecodeError("vertex key truncated");
  return static_cast<std::uint8_t>(in_[pos_++]);
}

std::uint32_t ByteReader::u32() {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | u8();
  return v;
}

std::int64_t ByteReader::i64() {
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u = (u << 8) | u8();
  return static_cast<std::int64_t>(u ^ (1ULL << 63));
}

std::uint64_t ByteReader::varint() {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const std::uint8_t b = u8();
    v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) {
      // Reject non-minimal encodings so the byte form stays canonical.
      if (b == 0 && shift != 0) throw DecodeError("non-canonical varint");
      return v;
    }
  }
  throw DecodeError("varint overflow");
}

std::string_view ByteReader::bytes(std::size_t n) {
  if (n > in_.size() - pos_) throw DecodeError("vertex key truncated");
  auto out = in_.substr(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::expect_done() const {
  if (!done()) throw DecodeError("trailing bytes in vertex key");
}

VertexKey lattice_key(std::span<const std::int64_t> coords) {
  ByteWriter w;
  for (auto c : coords) w.i64(c);
  return VertexKey{Family::kLattice, w.take()};
}

std::vector<std::int64_t> decode_lattice(const VertexKey& key, std::size_t dimension) {
  if (key.family != Family::kLattice) throw DecodeError("not a lattice vertex");
  if (key.bytes.size() != 8 * dimension) throw DecodeError("lattice vertex has wrong dimension");
  ByteReader r(key.bytes);
  std::vector<std::int64_t> out(dimension);
  for (auto& c : out) c = r.i64();
  return out;
}

VertexKey finite_key(std::uint32_t index) {
  ByteWriter w;
  w.u32(index);
  return VertexKey{Family::kFinite, w.take()};
}

std::uint32_t decode_finite(const VertexKey& key) {
  if (key.family != Family::kFinite) throw DecodeError("not a finite-graph vertex");
  ByteReader r(key.bytes);
  const auto v = r.u32();
  r.expect_done();
  return v;
}

}  // namespace anchored
