#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "anchored/graph.hpp"

namespace anchored {

struct ConstantLength {
  std::uint64_t length = 1;
};

// P(L = l) = (1 - success)^(l-1) * success, l = 1, 2, ...; mean 1/success.
struct GeometricLength {
  double success = 0.5;
};

// P(L = l) proportional to l^(-exponent), l = 1..cap.
struct TruncatedPowerLawLength {
  double exponent = 2.0;
  std::uint64_t cap = 1000;
};

using StretchLaw = std::variant<ConstantLength, GeometricLength, TruncatedPowerLawLength>;

// Stretching law nu plus the seed of the edge-length field {L_e}.
class StretchDescriptor {
 public:
  StretchDescriptor(StretchLaw law, std::uint64_t seed);

  const StretchLaw& law() const noexcept { return law_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Inverse CDF of nu at u in [0,1).
  std::uint64_t sample(double u) const;
  // P(L = l).
  double pmf(std::uint64_t l) const;
  double mean() const;
  std::string describe() const;

 private:
  StretchLaw law_;
  std::uint64_t seed_;
  std::vector<double> cdf_;  // power law only
};

// L_e as a pure function of (seed, canonical edge key) via the base graph's
// edge fingerprint.
std::uint64_t stretch_length(const StretchDescriptor& desc, Fingerprint edge_fingerprint);
std::uint64_t stretch_length(const StretchDescriptor& desc, const GraphOracle& base, const VertexKey& u,
                             const VertexKey& v);

// Structured form of a vertex of G^nu.
struct StretchedVertex {
  bool original = true;
  VertexKey base;        // original vertex
  EdgeKey edge;          // path interior: base edge, lo -> hi direction
  std::uint64_t index = 0;  // 1 <= index <= L_e - 1
};

VertexKey encode_stretched(const StretchedVertex& v);
StretchedVertex decode_stretched(const VertexKey& key);

// Random stretch G^nu: each base edge e becomes a path of L_e edges. Interior
// vertex i of edge {lo, hi} is at distance i from lo along the path.
class StretchOracle final : public GraphOracle {
 public:
  StretchOracle(OraclePtr base, StretchDescriptor desc);

  const GraphOracle& base() const noexcept { return *base_; }
  const StretchDescriptor& descriptor() const noexcept { return desc_; }
  std::uint64_t length(const VertexKey& u, const VertexKey& v) const;

  Family family() const override { return Family::kStretch; }
  std::string describe() const override;
  VertexKey basepoint() const override;
  std::vector<VertexKey> neighbors(const VertexKey& v) const override;
  void validate(const VertexKey& v) const override;
  std::string format_vertex(const VertexKey& v) const override;

 private:
  VertexKey step_along(const EdgeKey& e, std::uint64_t length, std::uint64_t index) const;

  OraclePtr base_;
  StretchDescriptor desc_;
};

}  // namespace anchored
