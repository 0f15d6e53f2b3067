#include "anchored/stretch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anchored {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

StretchDescriptor::StretchDescriptor(StretchLaw law, std::uint64_t seed) : law_(std::move(law)), seed_(seed) {
  std::visit(Overloaded{
                 [](const ConstantLength& c) {
                   if (c.length < 1) throw std::invalid_argument("constant stretch length must be >= 1");
                 },
                 [](const GeometricLength& g) {
                   if (!(g.success > 0.0 && g.success <= 1.0))
                     throw std::invalid_argument("geometric stretch parameter must be in (0,1]");
                 },
                 [this](const TruncatedPowerLawLength& t) {
                   if (t.cap < 1 || t.cap > 50'000'000) throw std::invalid_argument("power-law cap must be in [1, 5e7]");
                   if (!std::isfinite(t.exponent)) throw std::invalid_argument("power-law exponent must be finite");
                   cdf_.resize(t.cap);
                   double acc = 0.0;
                   for (std::uint64_t l = 1; l <= t.cap; ++l) {
                     acc += std::pow(static_cast<double>(l), -t.exponent);
                     cdf_[l - 1] = acc;
                   }
                   for (auto& c : cdf_) c /= acc;
                   cdf_.back() = 1.0;
                 },
             },
             law_);
}

std::uint64_t StretchDescriptor::sample(double u) const {
  return std::visit(Overloaded{
                        [](const ConstantLength& c) { return c.length; },
                        [u](const GeometricLength& g) -> std::uint64_t {
                          if (g.success >= 1.0) return 1;
                          // Number of failures before the first success, plus one.
                          const double l = std::floor(std::log1p(-u) / std::log1p(-g.success));
                          return 1 + static_cast<std::uint64_t>(std::min(l, 1e15));
                        },
                        [this, u](const TruncatedPowerLawLength&) -> std::uint64_t {
                          auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
                          return 1 + static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
                                         it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
                        },
                    },
                    law_);
}

double StretchDescriptor::pmf(std::uint64_t l) const {
  if (l < 1) return 0.0;
  return std::visit(Overloaded{
                        [l](const ConstantLength& c) { return l == c.length ? 1.0 : 0.0; },
                        [l](const GeometricLength& g) {
                          return std::pow(1.0 - g.success, static_cast<double>(l - 1)) * g.success;
                        },
                        [this, l](const TruncatedPowerLawLength& t) {
                          if (l > t.cap) return 0.0;
                          return cdf_[l - 1] - (l >= 2 ? cdf_[l - 2] : 0.0);
                        },
                    },
                    law_);
}

double StretchDescriptor::mean() const {
  return std::visit(Overloaded{
                        [](const ConstantLength& c) { return static_cast<double>(c.length); },
                        [](const GeometricLength& g) { return 1.0 / g.success; },
                        [this](const TruncatedPowerLawLength& t) {
                          double m = 0.0;
                          for (std::uint64_t l = 1; l <= t.cap; ++l) m += static_cast<double>(l) * pmf(l);
                          return m;
                        },
                    },
                    law_);
}

std::string StretchDescriptor::describe() const {
  return std::visit(Overloaded{
                        [](const ConstantLength& c) { return "constant(" + std::to_string(c.length) + ")"; },
                        [](const GeometricLength& g) { return "geometric(" + std::to_string(g.success) + ")"; },
                        [](const TruncatedPowerLawLength& t) {
                          return "powerlaw(" + std::to_string(t.exponent) + "," + std::to_string(t.cap) + ")";
                        },
                    },
                    law_);
}

std::uint64_t stretch_length(const StretchDescriptor& desc, Fingerprint edge_fingerprint) {
  return desc.sample(prf_uniform(desc.seed(), PrfDomain::kStretch, edge_fingerprint));
}

std::uint64_t stretch_length(const StretchDescriptor& desc, const GraphOracle& base, const VertexKey& u,
                             const VertexKey& v) {
  return stretch_length(desc, base.edge_fingerprint(u, v));
}

VertexKey encode_stretched(const StretchedVertex& v) {
  ByteWriter w;
  if (v.original) {
    w.u8(0);
    w.u8(static_cast<std::uint8_t>(v.base.family));
    w.bytes(v.base.bytes);
  } else {
    if (v.edge.lo.family != v.edge.hi.family || !(v.edge.lo < v.edge.hi))
      throw std::invalid_argument("stretched edge is not canonical");
    w.u8(1);
    w.u8(static_cast<std::uint8_t>(v.edge.lo.family));
    w.blob(v.edge.lo.bytes);
    w.blob(v.edge.hi.bytes);
    w.varint(v.index);
  }
  return VertexKey{Family::kStretch, w.take()};
}

StretchedVertex decode_stretched(const VertexKey& key) {
  if (key.family != Family::kStretch) throw DecodeError("not a stretched vertex");
  ByteReader r(key.bytes);
  StretchedVertex out;
  const auto tag = r.u8();
  const auto fam = static_cast<Family>(r.u8());
  if (tag == 0) {
    out.original = true;
    out.base = VertexKey{fam, std::string(r.bytes(key.bytes.size() - 2))};
  } else if (tag == 1) {
    out.original = false;
    VertexKey lo{fam, std::string(r.blob())};
    VertexKey hi{fam, std::string(r.blob())};
    if (!(lo < hi)) throw DecodeError("stretched edge is not canonical");
    out.edge = EdgeKey{std::move(lo), std::move(hi)};
    out.index = r.varint();
    r.expect_done();
  } else {
    throw DecodeError("bad stretched-vertex tag");
  }
  return out;
}

StretchOracle::StretchOracle(OraclePtr base, StretchDescriptor desc) : base_(std::move(base)), desc_(std::move(desc)) {
  if (!base_) throw std::invalid_argument("stretch needs a base oracle");
}

std::string StretchOracle::describe() const { return "stretch(" + base_->describe() + "," + desc_.describe() + ")"; }

VertexKey StretchOracle::basepoint() const {
  return encode_stretched(StretchedVertex{true, base_->basepoint(), {}, 0});
}

std::uint64_t StretchOracle::length(const VertexKey& u, const VertexKey& v) const {
  return stretch_length(desc_, *base_, u, v);
}

VertexKey StretchOracle::step_along(const EdgeKey& e, std::uint64_t len, std::uint64_t index) const {
  if (index == 0) return encode_stretched(StretchedVertex{true, e.lo, {}, 0});
  if (index == len) return encode_stretched(StretchedVertex{true, e.hi, {}, 0});
  return encode_stretched(StretchedVertex{false, {}, e, index});
}

void StretchOracle::validate(const VertexKey& v) const {
  const auto sv = decode_stretched(v);
  if (sv.original) {
    base_->validate(sv.base);
    return;
  }
  base_->validate(sv.edge.lo);
  const auto ns = base_->neighbors(sv.edge.lo);
  if (std::find(ns.begin(), ns.end(), sv.edge.hi) == ns.end()) throw DecodeError("stretched edge is not a base edge");
  const auto len = length(sv.edge.lo, sv.edge.hi);
  if (sv.index < 1 || sv.index >= len) throw DecodeError("path-interior index outside 1..L_e-1");
}

std::vector<VertexKey> StretchOracle::neighbors(const VertexKey& v) const {
  validate(v);
  const auto sv = decode_stretched(v);
  std::vector<VertexKey> out;
  if (sv.original) {
    for (auto& w : base_->neighbors(sv.base)) {
      const auto len = length(sv.base, w);
      const bool from_lo = sv.base < w;
      auto e = EdgeKey::make(sv.base, w);
      out.push_back(step_along(e, len, from_lo ? 1 : len - 1));
    }
  } else {
    const auto len = length(sv.edge.lo, sv.edge.hi);
    out.push_back(step_along(sv.edge, len, sv.index - 1));
    out.push_back(step_along(sv.edge, len, sv.index + 1));
  }
  return out;
}

std::string StretchOracle::format_vertex(const VertexKey& v) const {
  const auto sv = decode_stretched(v);
  if (sv.original) return base_->format_vertex(sv.base);
  return "[" + base_->format_vertex(sv.edge.lo) + "~" + base_->format_vertex(sv.edge.hi) + "]#" +
         std::to_string(sv.index);
}

}  // namespace anchored
