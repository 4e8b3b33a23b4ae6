#pragma once

#include <map>
#include <memory>

#include "widthlab/cyclespace/canonical_cycle.hpp"
#include "widthlab/fillcone/torus.hpp"

namespace widthlab {

struct EssentialnessReport {
  Ring ring = Ring::Z;
  std::size_t dimension = 0;
  /// Φ_*[M] in the φ_I basis of H_m(T^n); entries reduced mod 2 over GF2.
  Vector<Integer> image_class;
  bool essential = false;
};

/// Φ_*[M] ≠ 0 in H_m(T^n; ring), for a closed pseudomanifold M.
inline EssentialnessReport essentialness_check(const CellMap& phi, Ring ring) {
  if (ring == Ring::Q) throw UnsupportedCoefficients("essentialness_check supports Z and GF2");
  const auto& m = phi.source();
  const auto model = torus_model(phi.target());
  const std::size_t dim = static_cast<std::size_t>(m.dimension());
  EssentialnessReport rep;
  rep.ring = ring;
  rep.dimension = dim;
  Vector<Integer> pushed;
  if (ring == Ring::Z) {
    const auto mu = fundamental_cycle<Rational>(m, "source");
    Vector<Integer> z;
    for (const auto& c : mu) {
      if (c.get_den() != 1 || abs(c.get_num()) > 1) throw OrientationError("fundamental cycle of the source is not a unit chain");
      z.push_back(c.get_num());
    }
    pushed = phi.push_chain<Integer>(dim, z);
  } else {
    const auto mu = fundamental_cycle<Gf2>(m, "source");
    for (const auto& c : phi.push_chain<Gf2>(dim, mu)) pushed.push_back(Integer(c.value() ? 1 : 0));
  }
  rep.image_class = torus_class_coordinates(phi.target(), model, dim, pushed);
  for (auto& c : rep.image_class) {
    if (ring == Ring::GF2) c = ((c % 2) + 2) % 2;
    if (c != 0) rep.essential = true;
  }
  return rep;
}

template <ExactScalar T>
struct PushedCycle {
  std::shared_ptr<CycleSpace<T>> space;
  CycleChain<T> chain;
  std::map<NodeId, NodeId> node_map;
};

/// Applies Φ to every top chain and face of the chain's closure. Terms whose
/// image is degenerate are dropped.
template <ExactScalar T>
PushedCycle<T> pushforward_cycle(const CycleSpace<T>& space, const CycleChain<T>& z, const CellMap& phi) {
  if (phi.source_ptr() != space.ambient_ptr() && !(phi.source() == space.ambient()))
    throw InputError("pushforward map does not start at the cycle space's ambient complex");
  PushedCycle<T> out;
  out.space = std::make_shared<CycleSpace<T>>(phi.target_ptr(), space.shift());
  out.chain.dim = z.dim;
  for (auto id : space.closure(z)) {
    const auto& node = space.node(id);
    std::vector<NodeId> faces;
    for (auto f : node.faces) faces.push_back(out.node_map.at(f));
    out.node_map[id] = out.space->glue(faces, phi.push_chain<T>(space.shift() + node.dim, node.top), node.label);
  }
  for (const auto& [id, c] : z.terms) {
    const NodeId img = out.node_map.at(id);
    if (!out.space->is_degenerate(img)) out.chain.add(img, c);
  }
  return out;
}

}  // namespace widthlab
