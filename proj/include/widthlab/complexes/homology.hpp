#pragma once

#include <numeric>
#include <vector>

#include "widthlab/complexes/cell_map.hpp"
#include "widthlab/exactalg/solve.hpp"

namespace widthlab {

/// H_k of a chain complex with chosen generators and dual coordinate cocycles.
///
/// Over Z the free generators span a complement of the torsion; the rows of
/// `free_coordinates` are integral cocycles with row_i(free_generators[j]) = δ_ij
/// that vanish on boundaries and torsion generators. Over a field there is no torsion.
template <ExactScalar T>
struct HomologyGroup {
  std::size_t degree = 0;
  std::size_t betti = 0;
  std::vector<Integer> torsion;
  std::vector<Vector<T>> torsion_generators;
  std::vector<Vector<T>> free_generators;
  Matrix<T> free_coordinates;
  Matrix<T> torsion_coordinates;

  std::size_t generator_count() const { return torsion_generators.size() + free_generators.size(); }

  std::vector<Vector<T>> generators() const {
    auto g = torsion_generators;
    g.insert(g.end(), free_generators.begin(), free_generators.end());
    return g;
  }

  /// Free coordinates of a cycle's class.
  Vector<T> coordinates(const Vector<T>& cycle) const { return free_coordinates.apply(cycle); }
};

template <ExactScalar T>
struct HomologySummary {
  Ring ring = scalar_traits<T>::ring;
  std::vector<HomologyGroup<T>> groups;

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> b;
    for (const auto& g : groups) b.push_back(g.betti);
    return b;
  }
  long euler_characteristic() const {
    long e = 0;
    for (const auto& g : groups) e += (g.degree % 2 == 0 ? 1 : -1) * static_cast<long>(g.betti);
    return e;
  }
  const HomologyGroup<T>& operator[](std::size_t k) const { return groups.at(k); }
};

template <ExactScalar T>
HomologyGroup<T> homology_in_degree(const ChainComplexRep<T>& c, std::size_t k) {
  HomologyGroup<T> h;
  h.degree = k;
  const std::size_t n = c.rank(k);
  if (n == 0) {
    h.free_coordinates = Matrix<T>(0, 0);
    h.torsion_coordinates = Matrix<T>(0, 0);
    return h;
  }
  // Cycles: Z_k = image of K, with L K = I and c = K L c for every cycle c.
  Matrix<T> kmat, lmat;
  if (k == 0 || c.rank(k - 1) == 0) {
    kmat = Matrix<T>::identity(n);
    lmat = Matrix<T>::identity(n);
  } else {
    auto nf = diagonalize(c.d(k).to_dense(), TransformRequest{false, false, true, true});
    std::vector<std::size_t> tail(n - nf.rank);
    std::iota(tail.begin(), tail.end(), nf.rank);
    kmat = nf.v.select_columns(tail);
    lmat = nf.v_inv.select_rows(tail);
  }
  const std::size_t z = kmat.cols();
  if (z == 0) {
    h.free_coordinates = Matrix<T>(0, n);
    h.torsion_coordinates = Matrix<T>(0, n);
    return h;
  }
  // Boundaries in cycle coordinates.
  const Matrix<T> m = lmat * c.d(k + 1).to_dense();
  auto nf = diagonalize(m, TransformRequest{true, true, false, false});
  std::vector<std::size_t> tors_idx, free_idx;
  for (std::size_t j = 0; j < nf.rank; ++j)
    if (!is_unit(nf.diagonal[j])) tors_idx.push_back(j);
  for (std::size_t j = nf.rank; j < z; ++j) free_idx.push_back(j);
  const Matrix<T> gens_t = kmat * nf.u_inv.select_columns(tors_idx);
  const Matrix<T> gens_f = kmat * nf.u_inv.select_columns(free_idx);
  h.betti = free_idx.size();
  for (std::size_t j = 0; j < tors_idx.size(); ++j) {
    if constexpr (std::is_same_v<T, Integer>) h.torsion.push_back(nf.diagonal[tors_idx[j]]);
    h.torsion_generators.push_back(gens_t.column(j));
  }
  for (std::size_t j = 0; j < free_idx.size(); ++j) h.free_generators.push_back(gens_f.column(j));
  h.free_coordinates = nf.u.select_rows(free_idx) * lmat;
  h.torsion_coordinates = nf.u.select_rows(tors_idx) * lmat;
  return h;
}

template <ExactScalar T>
HomologySummary<T> homology(const ChainComplexRep<T>& c) {
  HomologySummary<T> s;
  for (std::size_t k = 0; k < c.cells.size(); ++k) s.groups.push_back(homology_in_degree(c, k));
  return s;
}

template <ExactScalar T>
HomologySummary<T> homology(const CellComplex& x) {
  return homology(chain_complex<T>(x));
}

/// Betti numbers and torsion only; no transforms are accumulated.
struct HomologyRanks {
  std::vector<std::size_t> betti;
  std::vector<std::vector<Integer>> torsion;
};

inline HomologyRanks homology_ranks(const CellComplex& x, Ring ring) {
  const auto c = chain_complex<Integer>(x);
  const std::size_t top = c.cells.size();
  std::vector<std::size_t> rank(top + 1, 0);
  std::vector<std::vector<Integer>> divisors(top + 1);
  for (std::size_t d = 1; d < top; ++d) {
    if (ring == Ring::Z) {
      auto nf = diagonalize(c.d(d).to_dense());
      rank[d] = nf.rank;
      divisors[d] = nf.diagonal;
    } else {
      rank[d] = rank_over(c.d(d), ring);
    }
  }
  HomologyRanks r;
  for (std::size_t k = 0; k < top; ++k) {
    r.betti.push_back(c.rank(k) - rank[k] - rank[k + 1]);
    std::vector<Integer> t;
    for (const auto& dv : divisors[k + 1])
      if (!is_unit(dv)) t.push_back(dv);
    r.torsion.push_back(std::move(t));
  }
  return r;
}

enum class Variance { homology, cohomology };

/// Matrix of H_k(f) on free generator bases (target rows, source columns);
/// the cohomology matrix is its transpose. Over Z only free parts are represented.
template <ExactScalar T>
Matrix<T> induced_map(const CellMap& f, const HomologyGroup<T>& source_h, const HomologyGroup<T>& target_h, std::size_t k,
                      Variance variance) {
  Matrix<T> m(target_h.betti, source_h.betti);
  for (std::size_t j = 0; j < source_h.betti; ++j) {
    const auto image = f.push_chain(k, source_h.free_generators[j]);
    const auto coords = target_h.coordinates(image);
    for (std::size_t i = 0; i < target_h.betti; ++i) m(i, j) = coords[i];
  }
  return variance == Variance::homology ? m : m.transpose();
}

template <ExactScalar T>
Matrix<T> induced_map(const CellMap& f, std::size_t k, Variance variance) {
  const auto hs = homology_in_degree(chain_complex<T>(f.source()), k);
  const auto ht = homology_in_degree(chain_complex<T>(f.target()), k);
  return induced_map(f, hs, ht, k, variance);
}

/// H_k of a subcomplex with generators lifted to ambient chain coordinates;
/// coordinate cocycles stay in subcomplex-local coordinates.
template <ExactScalar T>
struct SubcomplexHomology {
  ChainComplexRep<T> chains;
  HomologyGroup<T> group;
  std::vector<Vector<T>> ambient_free_generators;
};

template <ExactScalar T>
SubcomplexHomology<T> subcomplex_homology(const CellComplex& x, const Subcomplex& a, std::size_t k) {
  SubcomplexHomology<T> out;
  out.chains = chain_complex<T>(x, a);
  out.group = homology_in_degree(out.chains, k);
  for (const auto& g : out.group.free_generators) out.ambient_free_generators.push_back(out.chains.to_ambient(k, g, x.count(k)));
  return out;
}

/// Matrix of the restriction H^k(X) -> H^k(A): rows indexed by A's cohomology
/// basis, columns by X's; equals the transpose of H_k(A) -> H_k(X).
template <ExactScalar T>
Matrix<T> restriction_matrix(const CellComplex& x, const HomologyGroup<T>& hx, const Subcomplex& a, std::size_t k) {
  a.validate(x);
  const auto ha = subcomplex_homology<T>(x, a, k);
  Matrix<T> m(ha.group.betti, hx.betti);
  for (std::size_t j = 0; j < ha.group.betti; ++j) {
    const auto coords = hx.coordinates(ha.ambient_free_generators[j]);
    for (std::size_t i = 0; i < hx.betti; ++i) m(j, i) = coords[i];
  }
  return m;
}

/// rank[H^k(X; R) -> H^k(A; R)]; over Z, the rank of the induced map of free parts.
template <ExactScalar T>
std::size_t restriction_rank(const CellComplex& x, const HomologyGroup<T>& hx, const Subcomplex& a, std::size_t k) {
  return matrix_rank(restriction_matrix(x, hx, a, k));
}

inline std::size_t restriction_rank(const CellComplex& x, const Subcomplex& a, std::size_t k, Ring ring) {
  return with_ring(ring, [&]<class T>() {
    if (k >= static_cast<std::size_t>(x.dimension() + 1)) return std::size_t{0};
    const auto hx = homology_in_degree(chain_complex<T>(x), k);
    return restriction_rank(x, hx, a, k);
  });
}

/// ker[H^* X -> H^* A] per degree, as coefficient vectors in X's cohomology
/// basis together with representing cocycles on X.
template <ExactScalar T>
struct KernelIdeal {
  std::vector<std::vector<Vector<T>>> basis;
  std::vector<std::vector<Vector<T>>> cocycles;
  std::vector<Matrix<T>> restriction;

  std::size_t dimension(std::size_t k) const { return k < basis.size() ? basis[k].size() : 0; }
};

template <ExactScalar T>
KernelIdeal<T> kernel_ideal(const CellComplex& x, const Subcomplex& a) {
  a.validate(x);
  KernelIdeal<T> ideal;
  const auto cx = chain_complex<T>(x);
  for (std::size_t k = 0; k < cx.cells.size(); ++k) {
    const auto hx = homology_in_degree(cx, k);
    auto r = restriction_matrix(x, hx, a, k);
    std::vector<Vector<T>> ker;
    if constexpr (scalar_traits<T>::is_field) {
      ker = kernel_basis(r);
    } else {
      ker = integer_kernel_basis(r);
    }
    std::vector<Vector<T>> cocycles;
    for (const auto& v : ker) {
      if (!is_zero_vector(r.apply(v))) throw InvariantViolation("kernel ideal element does not restrict to zero");
      cocycles.push_back(hx.free_coordinates.apply_left(v));
    }
    ideal.basis.push_back(std::move(ker));
    ideal.cocycles.push_back(std::move(cocycles));
    ideal.restriction.push_back(std::move(r));
  }
  return ideal;
}

/// Connected components, ordered by smallest vertex id.
inline std::vector<Subcomplex> connected_components(const CellComplex& x) {
  std::vector<std::size_t> parent(x.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  if (x.dimension() >= 1)
    for (const auto& e : x.cells(1)) {
      auto a = find(e.front()), b = find(e.back());
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < x.num_vertices(); ++v)
    if (find(v) == v) roots.push_back(v);
  std::vector<Subcomplex> comps;
  for (auto r : roots)
    comps.push_back(Subcomplex::from_predicate(x, [&](CellRef c) { return find(x.cell(c.dim, c.index).front()) == r; }));
  return comps;
}

/// Full subcomplex on the vertices satisfying `keep`.
template <class Pred>
Subcomplex full_subcomplex(const CellComplex& x, Pred&& keep) {
  return Subcomplex::from_predicate(x, [&](CellRef c) {
    for (auto v : x.cell(c.dim, c.index))
      if (!keep(v)) return false;
    return true;
  });
}

}  // namespace widthlab
