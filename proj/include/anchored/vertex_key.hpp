#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anchored {

enum class Family : std::uint8_t {
  kLattice = 1,
  kRegularTree = 2,
  kRootedTree = 3,
  kFinite = 4,
  kGaltonWatson = 5,
  kStretch = 6,
  kLamplighter = 7,
};

std::string_view family_name(Family f);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical byte encoding of a vertex. Ordering is (family, bytes) with bytes
// compared as unsigned octets; this order breaks every tie in the library.
struct VertexKey {
  Family family{Family::kFinite};
  std::string bytes;

  friend bool operator==(const VertexKey&, const VertexKey&) = default;
  friend std::strong_ordering operator<=>(const VertexKey& a, const VertexKey& b) {
    if (a.family != b.family) return a.family <=> b.family;
    const int c = a.bytes.compare(b.bytes);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes) ^ static_cast<std::size_t>(k.family);
  }
};

// Unordered pair stored smaller key first.
struct EdgeKey {
  VertexKey lo;
  VertexKey hi;

  static EdgeKey make(VertexKey u, VertexKey v) {
    if (v < u) return EdgeKey{std::move(v), std::move(u)};
    return EdgeKey{std::move(u), std::move(v)};
  }

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend std::strong_ordering operator<=>(const EdgeKey& a, const EdgeKey& b) {
    if (auto c = a.lo <=> b.lo; c != 0) return c;
    return a.hi <=> b.hi;
  }
};

// Append-only writer for canonical encodings.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v);
  // Sign bit flipped, big-endian: byte order equals numeric order.
  void i64(std::int64_t v);
  void varint(std::uint64_t v);
  void bytes(std::string_view b) { out_.append(b); }
  // Length-prefixed bytes.
  void blob(std::string_view b) {
    varint(b.size());
    bytes(b);
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::int64_t i64();
  std::uint64_t varint();
  std::string_view bytes(std::size_t n);
  std::string_view blob() { return bytes(varint()); }

  bool done() const noexcept { return pos_ == in_.size(); }
  void expect_done() const;

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

VertexKey lattice_key(std::span<const std::int64_t> coords);
std::vector<std::int64_t> decode_lattice(const VertexKey& key, std::size_t dimension);

VertexKey finite_key(std::uint32_t index);
std::uint32_t decode_finite(const VertexKey& key);

}  // namespace anchored
