#pragma once

#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "widthlab/complexes/homology.hpp"
#include "widthlab/cyclespace/cycle_space.hpp"
#include "widthlab/exactalg/solve.hpp"

namespace widthlab {

/// Fundamental cycle of a closed complex over a field: one top-cell chain per
/// component, coefficients ±1, first top cell of each component positive.
template <ExactField T>
Vector<T> fundamental_cycle(const CellComplex& x, const std::string& role = "complex") {
  const int n = x.dimension();
  if (n < 0) throw OrientationError(role + " is empty");
  const auto top = static_cast<std::size_t>(n);
  Vector<T> mu(x.count(top), T(0));
  const auto boundary = chain_complex<T>(x).d(top).to_dense();
  for (const auto& comp : connected_components(x)) {
    const auto cols = comp.indices(top);
    if (cols.empty()) throw OrientationError(role + " has a component without " + std::to_string(n) + "-cells");
    const auto kernel = kernel_basis(boundary.select_columns(cols));
    if (kernel.size() != 1)
      throw OrientationError(role + " is not " + to_string(scalar_traits<T>::ring) + "-orientable: a component has top homology of rank " +
                             std::to_string(kernel.size()));
    const Vector<T>& z = kernel.front();
    T lead = T(0);
    for (const auto& v : z)
      if (!is_zero(v)) {
        lead = v;
        break;
      }
    for (std::size_t p = 0; p < cols.size(); ++p) {
      const T c = is_zero(z[p]) ? T(0) : z[p] / lead;
      if (c != T(1) && c != T(-1))
        throw OrientationError(role + " has a top cell " + x.describe(top, cols[p]) + " outside the support of its fundamental cycle");
      mu[cols[p]] = c;
    }
  }
  return mu;
}

namespace detail {

/// Target faces ∂_0..∂_d of cell (d, i), so that ∂ = Σ (-1)^j ∂_j.
inline std::vector<std::size_t> ordered_faces(const CellComplex& n, std::size_t d, std::size_t i) {
  std::vector<std::size_t> out;
  if (d == 0) return out;
  const auto& b = n.boundary(d, i);
  if (n.kind() == CellKind::cubical) {
    if (d != 1) throw InputError("canonical cycles need a simplicial target or a cubical target of dimension at most 1");
    out.resize(2);
    for (auto [face, sign] : b) out[sign > 0 ? 0 : 1] = face;
    if (b.size() != 2 || out[0] == out[1]) throw InvariantViolation("cubical edge without two distinct end points");
    return out;
  }
  const auto& t = n.cell(d, i);
  for (std::size_t j = 0; j <= d; ++j) {
    CellTuple f;
    for (std::size_t p = 0; p <= d; ++p)
      if (p != j) f.push_back(t[p]);
    auto ref = n.find(f);
    if (!ref) throw InvariantViolation("missing face of " + n.describe(d, i));
    int sign = 0;
    for (auto [face, s] : b)
      if (face == ref->index) sign = s;
    if (sign != (j % 2 ? -1 : 1)) throw InvariantViolation("face sign of " + n.describe(d, i) + " disagrees with the simplicial convention");
    out.push_back(ref->index);
  }
  return out;
}

/// ∂ restricted to columns `cols` in degree `deg` and rows `rows` in degree deg-1.
template <ExactField T>
SparseMatrix<T> boundary_block(const CellComplex& x, std::size_t deg, const std::vector<std::size_t>& cols, const std::vector<std::size_t>& rows) {
  std::vector<typename SparseMatrix<T>::Entry> entries;
  if (deg > 0 && !rows.empty()) {
    std::vector<std::ptrdiff_t> local(x.count(deg - 1), -1);
    for (std::size_t p = 0; p < rows.size(); ++p) local[rows[p]] = static_cast<std::ptrdiff_t>(p);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (auto [face, sign] : x.boundary(deg, cols[c]))
        if (local[face] >= 0) entries.push_back({static_cast<std::size_t>(local[face]), c, convert<T>(Integer(sign))});
  }
  return SparseMatrix<T>::from_entries(rows.size(), cols.size(), std::move(entries));
}

template <ExactField T>
Vector<T> gather(const Vector<T>& ambient, const std::vector<std::size_t>& cells) {
  Vector<T> out(cells.size(), T(0));
  for (std::size_t p = 0; p < cells.size(); ++p) out[p] = ambient[cells[p]];
  return out;
}

template <ExactField T>
Vector<T> scatter(const Vector<T>& local, const std::vector<std::size_t>& cells, std::size_t size) {
  Vector<T> out(size, T(0));
  for (std::size_t p = 0; p < cells.size(); ++p) out[cells[p]] = local[p];
  return out;
}

inline std::vector<std::size_t> cells_of(const Subcomplex& s, std::size_t d) { return d < s.levels() ? s.indices(d) : std::vector<std::size_t>{}; }

}  // namespace detail

/// Canonical cycle of a map M -> N together with the data it was assembled from.
template <ExactField T>
struct CanonicalCycle {
  std::shared_ptr<CycleSpace<T>> space;
  std::shared_ptr<const CellMap> map;
  CycleChain<T> cycle;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  Vector<T> fundamental;                         // μ on the top cells of M
  Vector<T> target_orientation;                  // ε on the top cells of N
  std::vector<std::vector<NodeId>> simplex;      // z_σ per target cell (dim, index)
  std::vector<std::vector<Vector<T>>> chains;    // c_σ, ambient coordinates in degree shift + dim
  std::vector<std::vector<std::vector<std::size_t>>> faces;  // ordered target faces
  std::vector<std::vector<bool>> resolved;       // c_σ needed the class-correcting re-solve

  std::size_t shift() const { return source_dim - target_dim; }
};

/// Assembles Z = Σ ε_σ z_σ over the top target cells, where each z_σ is glued
/// from per-cell chains solved inside the closed-cell preimages F_σ.
template <ExactField T>
CanonicalCycle<T> canonical_cycle(const CellMap& f) {
  const auto& m = f.source();
  const auto& n = f.target();
  if (n.kind() == CellKind::cubical && n.dimension() > 1)
    throw InputError("canonical cycles need a simplicial target or a cubical target of dimension at most 1");
  if (m.dimension() < n.dimension()) throw InputError("canonical cycles need dim source >= dim target");
  CanonicalCycle<T> out;
  out.source_dim = static_cast<std::size_t>(m.dimension());
  out.target_dim = static_cast<std::size_t>(n.dimension());
  const std::size_t q = out.target_dim, s = out.shift();
  out.fundamental = fundamental_cycle<T>(m, "source");
  out.target_orientation = fundamental_cycle<T>(n, "target");
  out.space = std::make_shared<CycleSpace<T>>(f.source_ptr(), s);
  out.map = std::make_shared<const CellMap>(f);

  out.faces.resize(q + 1);
  std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> cofaces(q + 1);  // (coface, position)
  for (std::size_t d = 0; d <= q; ++d) {
    out.faces[d].resize(n.count(d));
    cofaces[d].resize(n.count(d));
  }
  for (std::size_t d = 1; d <= q; ++d)
    for (std::size_t i = 0; i < n.count(d); ++i) {
      out.faces[d][i] = detail::ordered_faces(n, d, i);
      for (std::size_t j = 0; j <= d; ++j) cofaces[d - 1][out.faces[d][i][j]].push_back({i, j});
    }

  // over[d][i][e]: source e-cells carried onto exactly the target cell (d, i).
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> over(q + 1);
  for (std::size_t d = 0; d <= q; ++d) over[d].assign(n.count(d), std::vector<std::vector<std::size_t>>(out.source_dim + 2));
  for (std::size_t e = 0; e <= out.source_dim; ++e)
    for (std::size_t c = 0; c < m.count(e); ++c) {
      const auto im = f.image(e, c).cell;
      over[im.dim][im.index][e].push_back(c);
    }

  // Fiberedness: nothing above the expected dimension over an open cell, and
  // relative top homology of (F_σ, ∂F_σ) counts the components meeting the interior.
  std::vector<std::vector<Subcomplex>> closed(q + 1), rim(q + 1);
  for (std::size_t d = 0; d <= q; ++d)
    for (std::size_t i = 0; i < n.count(d); ++i) {
      const CellRef sigma{d, i};
      const std::string name = n.describe(d, i);
      const std::size_t e = s + d;
      for (std::size_t deg = e + 1; deg <= out.source_dim; ++deg)
        if (!over[d][i][deg].empty())
          throw FiberednessError(name, std::to_string(deg) + "-cells of the source lie over its interior, expected at most " + std::to_string(e));
      closed[d].push_back(f.preimage(Subcomplex::generated_by(n, {sigma})));
      std::vector<CellRef> bd;
      if (d > 0)
        for (auto face : out.faces[d][i]) bd.push_back({d - 1, face});
      rim[d].push_back(f.preimage(Subcomplex::generated_by(n, bd)));
      const auto rel = chain_complex_on<T>(m, relative_selection(closed[d][i], rim[d][i]));
      const std::size_t rank = e < rel.cells.size() ? homology_in_degree(rel, e).betti : 0;
      // Components of F_σ that carry an e-cell over the interior.
      std::vector<std::size_t> parent(m.num_vertices());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      for (auto edge : detail::cells_of(closed[d][i], 1)) {
        auto a = find(m.cell(1, edge).front()), b = find(m.cell(1, edge).back());
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
      std::set<std::size_t> roots;
      for (auto c : over[d][i][e]) roots.insert(find(m.cell(e, c).front()));
      if (rank != roots.size())
        throw FiberednessError(name, "relative top homology of the preimage pair has rank " + std::to_string(rank) + " but " +
                                         std::to_string(roots.size()) + " component(s) meet the interior");
    }

  // Reference relative classes, top-down from ε_σ μ.
  std::vector<std::vector<Vector<T>>> reference(q + 1);
  for (std::size_t i = 0; i < n.count(q); ++i) {
    Vector<T> r(m.count(out.source_dim), T(0));
    for (auto c : over[q][i][out.source_dim]) r[c] = out.target_orientation[i] * out.fundamental[c];
    reference[q].push_back(std::move(r));
  }
  for (std::size_t d = q; d-- > 0;) {
    const std::size_t e = s + d;
    for (std::size_t i = 0; i < n.count(d); ++i) {
      Vector<T> r(m.count(e), T(0));
      if (!cofaces[d][i].empty()) {
        const auto [sigma, pos] = cofaces[d][i].front();
        const auto bd = out.space->boundary_of(e + 1, reference[d + 1][sigma]);
        const T sign = pos % 2 ? T(-1) : T(1);
        for (auto c : over[d][i][e]) r[c] = sign * bd[c];
      }
      reference[d].push_back(std::move(r));
    }
  }

  // Bottom-up: c_σ with ∂c_σ = Σ (-1)^j c_{∂_j σ} inside C(F_σ) and the reference relative class.
  out.chains.resize(q + 1);
  out.simplex.resize(q + 1);
  out.resolved.resize(q + 1);
  for (std::size_t d = 0; d <= q; ++d) {
    const std::size_t e = s + d;
    for (std::size_t i = 0; i < n.count(d); ++i) {
      const std::string name = n.describe(d, i);
      const auto& fs = closed[d][i];
      const auto cols = detail::cells_of(fs, e);
      const auto rows = e > 0 ? detail::cells_of(fs, e - 1) : std::vector<std::size_t>{};
      Vector<T> b(e > 0 ? m.count(e - 1) : 0, T(0));
      for (std::size_t j = 0; j < out.faces[d][i].size(); ++j)
        add_scaled(b, j % 2 ? T(-1) : T(1), out.chains[d - 1][out.faces[d][i][j]]);
      const auto bmat = detail::boundary_block<T>(m, e, cols, rows);
      const auto y = detail::gather(b, rows);
      auto first = solve_linear(bmat, y);
      if (!is_solution(first)) throw FiberednessError(name, "boundary equation has no solution inside the preimage");
      Vector<T> c = detail::scatter(std::get<Vector<T>>(first), cols, m.count(e));

      const auto& inner = over[d][i][e];
      const auto& inner_up = over[d][i][e + 1];
      const auto rel = detail::boundary_block<T>(m, e + 1, inner_up, inner);
      const auto diff = vec_sub(detail::gather(c, inner), detail::gather(reference[d][i], inner));
      bool resolved = false;
      if (!is_solution(solve_linear(rel, diff))) {
        // Block system: ∂c = b on F_σ and P c - ∂_rel β = ρ_σ over the interior.
        std::vector<typename SparseMatrix<T>::Entry> entries = bmat.entries();
        std::vector<std::ptrdiff_t> col_of(m.count(e), -1);
        for (std::size_t p = 0; p < cols.size(); ++p) col_of[cols[p]] = static_cast<std::ptrdiff_t>(p);
        for (std::size_t r = 0; r < inner.size(); ++r) entries.push_back({rows.size() + r, static_cast<std::size_t>(col_of[inner[r]]), T(1)});
        for (const auto& en : rel.entries()) entries.push_back({rows.size() + en.row, cols.size() + en.col, -en.value});
        const auto big = SparseMatrix<T>::from_entries(rows.size() + inner.size(), cols.size() + inner_up.size(), std::move(entries));
        Vector<T> rhs = y;
        for (auto v : detail::gather(reference[d][i], inner)) rhs.push_back(v);
        auto second = solve_linear(big, rhs);
        if (!is_solution(second)) throw FiberednessError(name, "no chain in the preimage has the reference relative class");
        const auto& w = std::get<Vector<T>>(second);
        c = detail::scatter(Vector<T>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cols.size())), cols, m.count(e));
        resolved = true;
      }
      std::vector<NodeId> face_ids;
      for (auto fi : out.faces[d][i]) face_ids.push_back(out.simplex[d - 1][fi]);
      out.simplex[d].push_back(out.space->glue(face_ids, c, name));
      out.chains[d].push_back(std::move(c));
      out.resolved[d].push_back(resolved);
    }
  }

  out.cycle.dim = static_cast<std::ptrdiff_t>(q);
  for (std::size_t i = 0; i < n.count(q); ++i) out.cycle.add(out.simplex[q][i], out.target_orientation[i]);

  if (!out.space->boundary(out.cycle).is_zero_chain()) throw InvariantViolation("canonical cycle has nonzero boundary");
  const auto top = out.source_dim;
  const auto ev = out.space->ev(out.cycle);
  const auto cls = solve_linear(out.space->chains().d(top + 1), vec_sub(ev, out.fundamental));
  if (!is_solution(cls)) throw InvariantViolation("evaluation of the canonical cycle is not homologous to the fundamental cycle");
  return out;
}

/// ev(Z) - μ lies in the image of ∂; recomputed independently of construction.
template <ExactField T>
bool represents_fundamental_class(const CanonicalCycle<T>& z) {
  const auto ev = z.space->ev(z.cycle);
  const auto& cc = z.space->chains();
  if (!is_zero_vector(cc.d(z.source_dim).apply(ev))) return false;
  return is_solution(solve_linear(cc.d(z.source_dim + 1), vec_sub(ev, z.fundamental)));
}

}  // namespace widthlab
