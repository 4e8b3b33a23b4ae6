#pragma once

#include <optional>
#include <string>
#include <vector>

#include "widthlab/complexes/homology.hpp"
#include "widthlab/fillcone/torus.hpp"

namespace widthlab {

/// Subgroup of Z^n given by its row Hermite basis.
struct LatticeSubgroup {
  std::size_t ambient_rank = 0;
  Matrix<Integer> basis;  // rows, canonical per subgroup
  std::size_t rank = 0;
  /// Index in its saturation Z^n ∩ (L ⊗ Q): product of the elementary divisors.
  Integer index = 1;

  static LatticeSubgroup spanned_by(std::size_t n, const std::vector<Vector<Integer>>& gens) {
    LatticeSubgroup l;
    l.ambient_rank = n;
    Matrix<Integer> m(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = gens[i][j];
    l.basis = gens.empty() ? Matrix<Integer>(0, n) : hermite_normal_form(m);
    l.rank = l.basis.rows();
    if (l.rank > 0) {
      const auto snf = smith_normal_form(l.basis);
      for (const auto& d : snf.d) l.index *= d;
    }
    return l;
  }

  bool operator==(const LatticeSubgroup&) const = default;
};

struct ComponentLattice {
  std::size_t component = 0;
  VertexId first_vertex = 0;
  LatticeSubgroup lattice;
};

struct FillingCertificate {
  std::vector<ComponentLattice> components;
  std::optional<std::size_t> bound;  // n - q
  /// Filling applies iff every component rank is below the bound.
  bool applicable() const {
    if (!bound) return false;
    for (const auto& c : components)
      if (c.lattice.rank >= *bound) return false;
    return true;
  }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r;
    for (const auto& c : components) r.push_back(c.lattice.rank);
    return r;
  }
};

/// Per component of the source, the image of H_1(component; Z) in H_1(T^n; Z) = Z^n.
inline FillingCertificate h1_image_lattice(const CellMap& k, std::optional<std::size_t> bound = std::nullopt) {
  const auto model = torus_model(k.target());
  const auto& src = k.source();
  std::vector<Vector<Integer>> phi;
  for (std::size_t i = 0; i < model.rank(); ++i) phi.push_back(torus_cocycle(k.target(), model, {i}));
  FillingCertificate cert;
  cert.bound = bound;
  const auto comps = connected_components(src);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<Vector<Integer>> images;
    if (src.dimension() >= 1) {
      const auto h = subcomplex_homology<Integer>(src, comps[c], 1);
      for (const auto& g : h.ambient_free_generators) {
        const auto pushed = k.push_chain<Integer>(1, g);
        Vector<Integer> v;
        for (const auto& p : phi) v.push_back(dot(p, pushed));
        images.push_back(std::move(v));
      }
    }
    cert.components.push_back({c, static_cast<VertexId>(comps[c].indices(0).front()), LatticeSubgroup::spanned_by(model.rank(), images)});
  }
  return cert;
}

/// Plücker vectors of d-subsets of the lattice basis: a spanning set of Λ^d(L) in Z^{C(n,d)}.
inline std::vector<Vector<Integer>> exterior_power_span(const LatticeSubgroup& l, std::size_t d) {
  std::vector<Vector<Integer>> out;
  const auto cols = index_subsets(l.ambient_rank, d);
  for (const auto& rows : index_subsets(l.rank, d)) {
    Vector<Integer> v;
    for (const auto& c : cols) {
      Matrix<Integer> minor(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) minor(i, j) = l.basis(rows[i], c[j]);
      v.push_back(d == 0 ? Integer(1) : determinant_bareiss(minor));
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct VanishingComponent {
  std::size_t component = 0;
  std::size_t lattice_rank = 0;
  std::vector<Vector<Integer>> image;  // classes in φ_I coordinates
  std::size_t image_rank = 0;
  std::size_t exterior_rank = 0;
  bool contained = false;
};

struct VanishingReport {
  Ring ring = Ring::Q;
  std::size_t degree = 0;
  std::vector<VanishingComponent> components;
  bool holds() const {
    for (const auto& c : components)
      if (!c.contained) return false;
    return true;
  }
};

/// Checks im H_d(k_c) ⊆ Λ^d(lattice_c ⊗ Q) inside H_d(T^n; Q) for every component c.
inline VanishingReport pushforward_vanishing_check(const CellMap& k, std::size_t d, Ring ring = Ring::Q) {
  if (ring == Ring::GF2)
    throw UnsupportedCoefficients(
        "pushforward_vanishing_check refuses GF2: the connected double cover of the circle has rank H^1(k;GF2) = 0 "
        "yet cannot be filled, so mod-2 ranks do not control fillability; use Z or Q");
  const auto model = torus_model(k.target());
  const auto lattices = h1_image_lattice(k);
  const auto& src = k.source();
  const auto comps = connected_components(src);
  VanishingReport rep;
  rep.ring = ring;
  rep.degree = d;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    VanishingComponent vc;
    vc.component = c;
    vc.lattice_rank = lattices.components[c].lattice.rank;
    std::vector<Vector<Integer>> images;
    if (d <= static_cast<std::size_t>(std::max(src.dimension(), 0))) {
      std::vector<Vector<Integer>> gens;
      if (ring == Ring::Z) {
        gens = subcomplex_homology<Integer>(src, comps[c], d).ambient_free_generators;
      } else {
        // Rational cycles, cleared of denominators.
        for (const auto& g : subcomplex_homology<Rational>(src, comps[c], d).ambient_free_generators) {
          Integer den = 1;
          for (const auto& x : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
          Vector<Integer> z;
          for (const auto& x : g) z.push_back(Integer(x * den));
          gens.push_back(std::move(z));
        }
      }
      for (const auto& g : gens) images.push_back(torus_class_coordinates(k.target(), model, d, k.push_chain<Integer>(d, g)));
    }
    const auto span = exterior_power_span(lattices.components[c].lattice, d);
    const std::size_t width = index_subsets(model.rank(), d).size();
    auto rank_of = [&](const std::vector<Vector<Integer>>& rows) {
      Matrix<Rational> m(rows.size(), width);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) m(i, j) = Rational(rows[i][j]);
      return matrix_rank(m);
    };
    vc.image_rank = rank_of(images);
    vc.exterior_rank = rank_of(span);
    auto both = span;
    both.insert(both.end(), images.begin(), images.end());
    vc.contained = rank_of(both) == vc.exterior_rank;
    vc.image = std::move(images);
    rep.components.push_back(std::move(vc));
  }
  return rep;
}

/// A family of maps into tori built from sub-torus inclusions, degree covers,
/// staircase loops, products of covers, and disjoint unions of these.
struct FamilyMap {
  std::string name;
  CellMap map;
};

inline std::vector<FamilyMap> filling_family() {
  std::vector<FamilyMap> out;
  auto add = [&](std::string name, CellMap f) { out.push_back({std::move(name), std::move(f)}); };
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t a = 1; a < n; ++a)
      for (const auto& axes : index_subsets(n, a))
        if (n < 4 || axes.front() == 0) {
          std::string name = "subtorus T" + std::to_string(a) + "->T" + std::to_string(n) + " axes";
          for (auto x : axes) name += " " + std::to_string(x);
          add(name, subtorus_inclusion(n, axes));
        }
  for (std::size_t deg = 1; deg <= 3; ++deg) add("circle degree " + std::to_string(deg) + " in T1", circle_cover(1, 0, deg));
  add("circle degree 2 on axis 1 of T3", circle_cover(3, 1, 2));
  // Staircase loop of class (1,1) in T^2.
  {
    const std::vector<std::vector<std::size_t>> path{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}};
    add("staircase (1,1) in T2", map_into_torus(share(circle(6)), {3, 3}, [&](VertexId v) { return path[v]; }));
  }
  // Degree-2 covers T^2(6,3) -> T^2, T^3 and a product of covers.
  {
    const TorusModel src{{6, 3}};
    auto x = share(torus({6, 3}));
    add("degree 2 self cover of T2", map_into_torus(x, {3, 3}, [&](VertexId v) {
          auto c = src.coordinates(v);
          return std::vector<std::size_t>{c[0] % 3, c[1]};
        }));
    add("degree 2 cover into T3", map_into_torus(x, {3, 3, 3}, [&](VertexId v) {
          auto c = src.coordinates(v);
          return std::vector<std::size_t>{c[0] % 3, c[1], 0};
        }));
    add("degree 2 cover onto axes 0 and 2 of T3", map_into_torus(x, {3, 3, 3}, [&](VertexId v) {
          auto c = src.coordinates(v);
          return std::vector<std::size_t>{c[0] % 3, 0, c[1]};
        }));
  }
  {
    const TorusModel src{{6, 6}};
    add("product of two degree 2 covers", map_into_torus(share(torus({6, 6})), {3, 3}, [&](VertexId v) {
          auto c = src.coordinates(v);
          return std::vector<std::size_t>{c[0] % 3, c[1] % 3};
        }));
  }
  // Disjoint unions: two circles on different axes, circle plus sub-torus.
  {
    auto u = share(disjoint_union({circle(3), circle(3)}));
    add("two circles on axes 0 and 1 of T2", map_into_torus(u, {3, 3}, [&](VertexId v) {
          std::vector<std::size_t> c(2, 0);
          c[v / 3] = v % 3;
          return c;
        }));
    auto w = share(disjoint_union({circle(6), torus(2)}));
    add("double circle plus sub-torus in T3", map_into_torus(w, {3, 3, 3}, [&](VertexId v) {
          if (v < 6) return std::vector<std::size_t>{0, 0, v % 3};
          const std::size_t t = v - 6;
          return std::vector<std::size_t>{t / 3, t % 3, 0};
        }));
  }
  return out;
}

}  // namespace widthlab
