#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "widthlab/cyclespace/canonical_cycle.hpp"
#include "widthlab/width/width.hpp"

namespace widthlab {

enum class ConeMode { global, local };

inline std::string to_string(ConeMode m) { return m == ConeMode::global ? "global" : "local"; }

inline ConeMode cone_mode_from_string(const std::string& s) {
  if (s == "global") return ConeMode::global;
  if (s == "local") return ConeMode::local;
  throw InputError("unknown cone mode '" + s + "', expected global or local");
}

template <ExactScalar T>
struct ConeStage {
  NodeId simplex = 0;  // ζ
  std::string label;
  NodeId cone = 0;  // w_ζ
  Vector<T> top;    // ŵ_ζ
};

template <ExactScalar T>
struct ObstructionReport {
  std::string stage;  // label of ζ, or "final"
  std::optional<CellRef> target_cell;
  std::size_t degree = 0;  // ambient degree of the unknown ŵ
  SparseMatrix<T> system;
  Vector<T> rhs;
  std::vector<std::size_t> columns;  // ambient cells allowed in ŵ
  std::optional<InfeasibilityCertificate<T>> certificate;
  std::vector<ConeStage<T>> partial;
  std::optional<std::size_t> fiber_rank;  // rank H^1(M) -> H^1(F_σ) over Z
  std::optional<std::size_t> bound;       // n - q
  std::string detail;

  bool verifies() const { return certificate && verifies_certificate(system, rhs, certificate->u); }
};

template <ExactScalar T>
struct Cone {
  std::vector<ConeStage<T>> stages;
  CycleChain<T> chain;  // Σ a_ζ w_ζ
  NodeId apex = 0;
};

template <ExactScalar T>
using ConeResult = std::variant<Cone<T>, ObstructionReport<T>>;

template <ExactScalar T>
bool is_complete(const ConeResult<T>& r) {
  return std::holds_alternative<Cone<T>>(r);
}

/// Cones off a cycle-space chain one simplex at a time, faces first. `support`
/// returns the ambient cells of degree `deg` allowed in ŵ_ζ (all when nullopt).
template <ExactField T>
ConeResult<T> cone_build(CycleSpace<T>& space, const CycleChain<T>& z,
                         const std::function<std::optional<std::vector<std::size_t>>(NodeId, std::size_t)>& support = {},
                         const std::function<void(NodeId, ObstructionReport<T>&)>& annotate = {}) {
  const auto& x = space.ambient();
  const std::size_t s = space.shift();
  Cone<T> cone;
  cone.chain.dim = z.dim + 1;
  if (z.is_zero_chain()) return cone;
  cone.apex = space.glue({}, Vector<T>(space.degree_size(static_cast<std::ptrdiff_t>(s)), T(0)), "apex");
  std::map<NodeId, NodeId> w;
  for (auto zeta : space.closure(z)) {
    const auto node = space.node(zeta);  // copy: glue below may reallocate
    const std::size_t k = node.dim;
    const std::size_t deg = s + k + 1;
    Vector<T> y(space.degree_size(static_cast<std::ptrdiff_t>(s + k)), T(0));
    std::vector<NodeId> faces;
    if (k == 0) {
      faces.push_back(cone.apex);
    } else {
      for (std::size_t i = 0; i <= k; ++i) {
        const NodeId wf = w.at(node.faces[i]);
        faces.push_back(wf);
        add_scaled(y, i % 2 ? T(-1) : T(1), space.node(wf).top);
      }
    }
    faces.push_back(zeta);
    add_scaled(y, (k + 1) % 2 ? T(-1) : T(1), node.top);

    std::vector<std::size_t> cols;
    if (auto allowed = support ? support(zeta, deg) : std::nullopt) {
      cols = std::move(*allowed);
    } else {
      cols.resize(x.count(deg));
      std::iota(cols.begin(), cols.end(), 0);
    }
    std::vector<std::size_t> rows(y.size());
    std::iota(rows.begin(), rows.end(), 0);
    const auto b = detail::boundary_block<T>(x, deg, cols, rows);
    auto solved = solve_linear(b, y);
    if (!is_solution(solved)) {
      ObstructionReport<T> rep;
      rep.stage = node.label.empty() ? "simplex " + std::to_string(zeta) : node.label;
      rep.degree = deg;
      rep.system = b;
      rep.rhs = y;
      rep.columns = cols;
      rep.certificate = std::get<InfeasibilityCertificate<T>>(solved);
      rep.partial = cone.stages;
      rep.detail = "no chain of degree " + std::to_string(deg) + " has the required boundary";
      if (annotate) annotate(zeta, rep);
      return rep;
    }
    Vector<T> top = detail::scatter(std::get<Vector<T>>(solved), cols, x.count(deg));
    const NodeId id = space.glue(faces, top, node.label.empty() ? std::string{} : "cone " + node.label);
    w[zeta] = id;
    cone.stages.push_back({zeta, node.label, id, std::move(top)});
  }
  for (const auto& [id, c] : z.terms) cone.chain.add(w.at(id), c);

  // ∂(Σ a w) = (-1)^{q+1} Z, with the apex read as the augmentation.
  auto bd = space.boundary(cone.chain);
  bd.terms.erase(cone.apex);
  CycleChain<T> expected;
  expected.dim = z.dim;
  const T sign = (z.dim + 1) % 2 ? T(-1) : T(1);
  for (const auto& [id, c] : z.terms) expected.add(id, sign * c);
  Vector<T> ev_expected = space.ev(z);
  for (auto& v : ev_expected) v = sign * v;
  if (!(bd == expected) || space.ev(bd) != ev_expected) {
    ObstructionReport<T> rep;
    rep.stage = "final";
    rep.partial = cone.stages;
    rep.detail = "boundary of the assembled cone differs from (-1)^{q+1} Z";
    return rep;
  }
  return cone;
}

/// Cone on a canonical cycle (or a replacement chain in the same cycle space).
/// Local mode restricts ŵ_ζ to source cells over the closed star of ζ's target cell.
template <ExactField T>
ConeResult<T> cone_build(const CanonicalCycle<T>& cc, ConeMode mode, std::optional<CycleChain<T>> chain = std::nullopt) {
  const auto& f = *cc.map;
  const auto& n = f.target();
  std::map<NodeId, CellRef> cell_of;
  for (std::size_t d = 0; d < cc.simplex.size(); ++d)
    for (std::size_t i = 0; i < cc.simplex[d].size(); ++i) cell_of.emplace(cc.simplex[d][i], CellRef{d, i});
  const auto& z = chain ? *chain : cc.cycle;

  std::map<NodeId, Subcomplex> region;
  auto star_preimage = [&](NodeId zeta) -> const Subcomplex& {
    if (auto it = region.find(zeta); it != region.end()) return it->second;
    const auto it = cell_of.find(zeta);
    if (it == cell_of.end()) throw InputError("local cone mode needs simplices indexed by target cells");
    const CellRef sigma = it->second;
    std::vector<CellRef> star;
    for (std::size_t d = sigma.dim; d <= static_cast<std::size_t>(n.dimension()); ++d)
      for (std::size_t i = 0; i < n.count(d); ++i)
        if (Subcomplex::generated_by(n, {CellRef{d, i}}).contains(sigma)) star.push_back({d, i});
    return region.emplace(zeta, f.preimage(Subcomplex::generated_by(n, star))).first->second;
  };
  std::function<std::optional<std::vector<std::size_t>>(NodeId, std::size_t)> support;
  if (mode == ConeMode::local)
    support = [&](NodeId zeta, std::size_t deg) -> std::optional<std::vector<std::size_t>> { return detail::cells_of(star_preimage(zeta), deg); };
  auto annotate = [&](NodeId zeta, ObstructionReport<T>& rep) {
    rep.bound = cc.shift();
    const auto it = cell_of.find(zeta);
    if (it == cell_of.end()) return;
    rep.target_cell = it->second;
    rep.fiber_rank = restriction_rank(f.source(), closed_cell_preimage(f, it->second), 1, Ring::Z);
  };
  return cone_build<T>(*cc.space, z, support, annotate);
}

template <ExactField T>
ConeResult<T> cone_build(const CanonicalCycle<T>& cc, ConeMode mode, const CycleChain<T>& chain) {
  return cone_build<T>(cc, mode, std::optional<CycleChain<T>>(chain));
}

}  // namespace widthlab
