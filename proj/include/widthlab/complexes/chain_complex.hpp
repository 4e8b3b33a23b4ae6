#pragma once

#include <vector>

#include "widthlab/complexes/cell_complex.hpp"
#include "widthlab/exactalg/matrix.hpp"

namespace widthlab {

/// Cells chosen per dimension (ambient indices, ascending). Chains on a
/// selection use local coordinates: position p stands for cell sel[d][p].
using CellSelection = std::vector<std::vector<std::size_t>>;

inline CellSelection all_cells(const CellComplex& x) {
  CellSelection s(x.dimension() + 1);
  for (std::size_t d = 0; d < s.size(); ++d) {
    s[d].resize(x.count(d));
    std::iota(s[d].begin(), s[d].end(), 0);
  }
  return s;
}

inline CellSelection selection_of(const Subcomplex& a) {
  CellSelection s(a.levels());
  for (std::size_t d = 0; d < s.size(); ++d) s[d] = a.indices(d);
  return s;
}

/// Cells of `k` not in `l`: the generators of the relative chain group C(K, L).
inline CellSelection relative_selection(const Subcomplex& k, const Subcomplex& l) {
  CellSelection s(k.levels());
  for (std::size_t d = 0; d < s.size(); ++d)
    for (auto i : k.indices(d))
      if (!l.contains(d, i)) s[d].push_back(i);
  return s;
}

template <ExactScalar T>
struct ChainComplexRep {
  Ring ring = scalar_traits<T>::ring;
  CellSelection cells;
  /// boundary[d]: C_d -> C_{d-1}; boundary[0] has zero rows.
  std::vector<SparseMatrix<T>> boundary;

  std::size_t top() const { return cells.empty() ? 0 : cells.size() - 1; }
  std::size_t rank(std::size_t d) const { return d < cells.size() ? cells[d].size() : 0; }
  bool empty() const { return cells.empty(); }

  /// ∂_d for any d >= 0; zero maps outside the stored range.
  SparseMatrix<T> d(std::size_t k) const {
    if (k < boundary.size()) return boundary[k];
    return SparseMatrix<T>(rank(k - 1), rank(k));
  }

  /// Lifts a local chain on this complex's selection to ambient coordinates.
  Vector<T> to_ambient(std::size_t dim, const Vector<T>& local, std::size_t ambient_count) const {
    Vector<T> out(ambient_count, T(0));
    for (std::size_t p = 0; p < local.size(); ++p) out[cells[dim][p]] = local[p];
    return out;
  }

  /// Restricts an ambient chain to the selection (drops the other cells).
  Vector<T> to_local(std::size_t dim, const Vector<T>& ambient) const {
    Vector<T> out(rank(dim), T(0));
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = ambient[cells[dim][p]];
    return out;
  }
};

/// Cellular chain complex on a selection of cells; incidences to unselected
/// faces are dropped, which gives the relative complex C(K, L) when the
/// selection is K \ L and the plain complex C(A) when it is a subcomplex.
template <ExactScalar T>
ChainComplexRep<T> chain_complex_on(const CellComplex& x, const CellSelection& sel) {
  ChainComplexRep<T> c;
  c.cells = sel;
  while (!c.cells.empty() && c.cells.back().empty()) c.cells.pop_back();
  c.boundary.resize(c.cells.size());
  for (std::size_t d = 0; d < c.cells.size(); ++d) {
    const std::size_t rows = d == 0 ? 0 : c.cells[d - 1].size();
    std::vector<typename SparseMatrix<T>::Entry> entries;
    if (d > 0) {
      std::vector<std::ptrdiff_t> local(x.count(d - 1), -1);
      for (std::size_t p = 0; p < c.cells[d - 1].size(); ++p) local[c.cells[d - 1][p]] = static_cast<std::ptrdiff_t>(p);
      for (std::size_t col = 0; col < c.cells[d].size(); ++col)
        for (auto [face, sign] : x.boundary(d, c.cells[d][col])) {
          if (local[face] < 0) continue;
          const T v = convert<T>(Integer(sign));
          if (!is_zero(v)) entries.push_back({static_cast<std::size_t>(local[face]), col, v});
        }
    }
    c.boundary[d] = SparseMatrix<T>::from_entries(rows, c.cells[d].size(), std::move(entries));
  }
  return c;
}

template <ExactScalar T>
ChainComplexRep<T> chain_complex(const CellComplex& x) {
  return chain_complex_on<T>(x, all_cells(x));
}

template <ExactScalar T>
ChainComplexRep<T> chain_complex(const CellComplex& x, const Subcomplex& a) {
  return chain_complex_on<T>(x, selection_of(a));
}

template <ExactScalar T>
bool boundary_squares_zero(const ChainComplexRep<T>& c) {
  for (std::size_t d = 1; d < c.boundary.size(); ++d)
    if (!(c.boundary[d - 1] * c.boundary[d]).to_dense().is_zero_matrix()) return false;
  return true;
}

}  // namespace widthlab
