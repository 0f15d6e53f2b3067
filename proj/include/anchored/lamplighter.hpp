#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "anchored/finite_group.hpp"
#include "anchored/graph.hpp"

namespace anchored {

// Vertex (m, eta) of W = G x sum_{x in G} F. `lamps` stores only the
// non-identity coordinates, so its key set is exactly the support of eta.
struct LampState {
  VertexKey marker;
  std::map<VertexKey, GroupElement> lamps;

  GroupElement lamp(const VertexKey& x) const {
    auto it = lamps.find(x);
    return it == lamps.end() ? FiniteGroupGraph::identity() : it->second;
  }
  void set_lamp(const VertexKey& x, GroupElement value) {
    if (value == FiniteGroupGraph::identity()) {
      lamps.erase(x);
    } else {
      lamps[x] = value;
    }
  }

  friend bool operator==(const LampState&, const LampState&) = default;
};

VertexKey encode_lamp_state(const LampState& s);
LampState decode_lamp_state(const VertexKey& key);

// Lamplighter product over an arbitrary base graph. Neighbors of (m, eta):
// first the marker moves (base neighbor order), then the lamp switches at m
// (eta(m) * g for each generator g, generator order).
//
// Percolation fingerprints are structured so a walker can maintain them in
// O(1) per step: the lamp configuration is digested as a wrapping sum of
// per-site terms (Zobrist hashing), and each edge type combines that digest
// with the base data the edge touches.
class LamplighterOracle final : public GraphOracle {
 public:
  LamplighterOracle(OraclePtr base, FiniteGroupGraph group);

  const GraphOracle& base() const noexcept { return *base_; }
  const OraclePtr& base_ptr() const noexcept { return base_; }
  const FiniteGroupGraph& group() const noexcept { return group_; }

  Family family() const override { return Family::kLamplighter; }
  std::string describe() const override;
  VertexKey basepoint() const override;
  std::vector<VertexKey> neighbors(const VertexKey& v) const override;
  std::size_t degree(const VertexKey& v) const override;
  void validate(const VertexKey& v) const override;
  Fingerprint vertex_fingerprint(const VertexKey& v) const override;
  Fingerprint edge_fingerprint(const VertexKey& u, const VertexKey& v) const override;
  std::string format_vertex(const VertexKey& v) const override;

  std::vector<LampState> neighbor_states(const LampState& s) const;

  // Digest pieces.
  Fingerprint lamp_term(Fingerprint site_fingerprint, GroupElement value) const noexcept;
  Fingerprint config_digest(const LampState& s) const;
  Fingerprint state_fingerprint(Fingerprint config_digest, Fingerprint marker_fingerprint) const noexcept;
  Fingerprint move_edge_fingerprint(Fingerprint config_digest, Fingerprint base_edge_fingerprint) const noexcept;
  // `digest_off_marker` excludes the marker site's term.
  Fingerprint lamp_edge_fingerprint(Fingerprint digest_off_marker, Fingerprint marker_fingerprint, GroupElement a,
                                    GroupElement b) const noexcept;

 private:
  void validate_state(const LampState& s) const;

  OraclePtr base_;
  FiniteGroupGraph group_;
};

std::shared_ptr<const LamplighterOracle> make_lamplighter(OraclePtr base, FiniteGroupGraph group);
// G_d = Z^d x Z_2.
std::shared_ptr<const LamplighterOracle> make_lamplighter_zd(std::size_t d);

}  // namespace anchored
