#pragma once

#include <set>
#include <string>
#include <vector>

#include "widthlab/complexes/cell_map.hpp"

namespace widthlab {

inline CellComplex point_complex(CellKind kind = CellKind::cubical) { return CellComplex::from_cells(kind, {"pt"}, {}); }

/// Cubical circle with m vertices 0..m-1 and edges [i, i+1 mod m].
inline CellComplex circle(std::size_t m = 3) {
  if (m < 3) throw ComplexError("a circle needs at least 3 vertices");
  std::vector<std::string> names;
  std::vector<CellTuple> cells;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(std::to_string(i));
    cells.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % m)});
  }
  return CellComplex::from_cells(CellKind::cubical, std::move(names), cells, CellComplex::Closure::require);
}

/// Simplicial circle with m vertices.
inline CellComplex simplicial_circle(std::size_t m = 3) {
  if (m < 3) throw ComplexError("a circle needs at least 3 vertices");
  std::vector<std::string> names;
  std::vector<CellTuple> cells;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(std::to_string(i));
    cells.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % m)});
  }
  return CellComplex::from_cells(CellKind::simplicial, std::move(names), cells, CellComplex::Closure::require);
}

/// Cartesian product of cubical complexes. Vertex (x, y) is named "x,y" and
/// product cubes take the axes of the left factor first.
inline CellComplex product_complex(const CellComplex& x, const CellComplex& y) {
  if (x.kind() != CellKind::cubical || y.kind() != CellKind::cubical)
    throw ComplexError("products are only supported for cubical complexes");
  const std::size_t ny = y.num_vertices();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < x.num_vertices(); ++i)
    for (std::size_t j = 0; j < ny; ++j)
      names.push_back(x.vertex_name(static_cast<VertexId>(i)) + "," + y.vertex_name(static_cast<VertexId>(j)));
  std::vector<CellTuple> cells;
  for (int dx = 0; dx <= x.dimension(); ++dx)
    for (const auto& a : x.cells(dx))
      for (int dy = 0; dy <= y.dimension(); ++dy)
        for (const auto& b : y.cells(dy)) {
          CellTuple t(a.size() * b.size());
          for (std::size_t mb = 0; mb < b.size(); ++mb)
            for (std::size_t ma = 0; ma < a.size(); ++ma) t[ma + mb * a.size()] = static_cast<VertexId>(a[ma] * ny + b[mb]);
          cells.push_back(std::move(t));
        }
  return CellComplex::from_cells(CellKind::cubical, std::move(names), cells, CellComplex::Closure::require);
}

/// Product of circles with the given vertex counts; vertex names "i1,...,in".
inline CellComplex torus(const std::vector<std::size_t>& periods) {
  if (periods.empty()) throw ComplexError("a torus needs at least one circle factor");
  CellComplex t = circle(periods.front());
  for (std::size_t i = 1; i < periods.size(); ++i) t = product_complex(t, circle(periods[i]));
  return t;
}

inline CellComplex torus(std::size_t n, std::size_t m = 3) { return torus(std::vector<std::size_t>(n, m)); }

/// Boundary of the unit 3-cube: a cubical 2-sphere on vertices "000".."111".
inline CellComplex cube_sphere() {
  std::vector<std::string> names;
  for (int v = 0; v < 8; ++v) names.push_back(std::to_string(v & 1) + std::to_string((v >> 1) & 1) + std::to_string((v >> 2) & 1));
  std::vector<CellTuple> cells;
  for (int fixed = 0; fixed < 3; ++fixed)
    for (int value = 0; value < 2; ++value) {
      std::vector<int> free;
      for (int a = 0; a < 3; ++a)
        if (a != fixed) free.push_back(a);
      CellTuple t(4);
      for (int m = 0; m < 4; ++m) {
        int v = value << fixed;
        if (m & 1) v |= 1 << free[0];
        if (m & 2) v |= 1 << free[1];
        t[m] = static_cast<VertexId>(v);
      }
      cells.push_back(t);
    }
  return CellComplex::from_cells(CellKind::cubical, std::move(names), cells, CellComplex::Closure::generate);
}

/// Six-vertex triangulation of the real projective plane.
inline CellComplex rp2() {
  std::vector<std::string> names{"0", "1", "2", "3", "4", "5"};
  const std::vector<CellTuple> tri{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                   {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
  return CellComplex::from_cells(CellKind::simplicial, std::move(names), tri);
}

/// Disjoint union; vertex v of part i is named "i:v".
inline CellComplex disjoint_union(const std::vector<CellComplex>& parts) {
  if (parts.empty()) throw ComplexError("empty disjoint union");
  std::vector<std::string> names;
  std::vector<CellTuple> cells;
  VertexId offset = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].kind() != parts.front().kind()) throw ComplexError("disjoint union of mixed complex kinds");
    for (const auto& n : parts[p].vertex_names()) names.push_back(std::to_string(p) + ":" + n);
    for (int d = 1; d <= parts[p].dimension(); ++d)
      for (auto t : parts[p].cells(d)) {
        for (auto& v : t) v += offset;
        cells.push_back(std::move(t));
      }
    offset += static_cast<VertexId>(parts[p].num_vertices());
  }
  return CellComplex::from_cells(parts.front().kind(), std::move(names), cells, CellComplex::Closure::require);
}

/// Barycentric (simplicial) or midpoint (cubical) subdivision. Vertex ids of
/// the original vertices are preserved; `carrier[v]` is the cell whose
/// barycenter is the new vertex v.
struct Subdivision {
  CellComplex complex;
  std::vector<CellRef> carrier;
};

inline Subdivision subdivide(const CellComplex& x) {
  Subdivision s;
  std::vector<std::vector<VertexId>> bary(x.dimension() + 1);
  std::vector<std::string> names;
  for (int d = 0; d <= x.dimension(); ++d) {
    bary[d].resize(x.count(d));
    for (std::size_t i = 0; i < x.count(d); ++i) {
      bary[d][i] = static_cast<VertexId>(s.carrier.size());
      s.carrier.push_back({static_cast<std::size_t>(d), i});
      if (d == 0) {
        names.push_back(x.vertex_name(x.cell(0, i).front()));
      } else {
        CellTuple sorted = x.cell(d, i);
        std::sort(sorted.begin(), sorted.end());
        std::string n;
        for (std::size_t k = 0; k < sorted.size(); ++k) n += (k ? "|" : "") + x.vertex_name(sorted[k]);
        names.push_back(n);
      }
    }
  }
  auto bary_of = [&](const CellTuple& vertices) {
    auto ref = x.find(vertices);
    if (!ref) throw InvariantViolation("subdivision lost a face");
    return bary[ref->dim][ref->index];
  };
  std::vector<CellTuple> cells;
  for (int d = 1; d <= x.dimension(); ++d) {
    for (const auto& t : x.cells(d)) {
      if (x.kind() == CellKind::cubical) {
        for (std::size_t corner = 0; corner < t.size(); ++corner) {
          CellTuple small(t.size());
          for (std::size_t mp = 0; mp < t.size(); ++mp) {
            CellTuple face;
            for (std::size_t m = 0; m < t.size(); ++m)
              if ((m & ~mp) == (corner & ~mp)) face.push_back(t[m]);
            small[mp] = bary_of(face);
          }
          cells.push_back(std::move(small));
        }
      } else {
        std::vector<std::size_t> perm(t.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          CellTuple flag;
          CellTuple face;
          for (auto p : perm) {
            face.push_back(t[p]);
            flag.push_back(bary_of(face));
          }
          cells.push_back(std::move(flag));
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
  s.complex = CellComplex::from_cells(x.kind(), std::move(names), cells);
  return s;
}

/// The induced map between subdivisions: barycenter(τ) -> barycenter(f(τ)).
inline CellMap subdivide_map(const CellMap& f, const Subdivision& src, const Subdivision& tgt) {
  std::vector<std::vector<VertexId>> tgt_bary(f.target().dimension() + 1);
  for (std::size_t v = 0; v < tgt.carrier.size(); ++v) {
    const auto& c = tgt.carrier[v];
    if (tgt_bary[c.dim].size() <= c.index) tgt_bary[c.dim].resize(f.target().count(c.dim));
    tgt_bary[c.dim][c.index] = static_cast<VertexId>(v);
  }
  std::vector<VertexId> vm(src.carrier.size());
  for (std::size_t v = 0; v < src.carrier.size(); ++v) {
    const auto im = f.image(src.carrier[v].dim, src.carrier[v].index).cell;
    vm[v] = tgt_bary[im.dim][im.index];
  }
  return CellMap(share(src.complex), share(tgt.complex), std::move(vm));
}

/// Coordinate projection T^n -> T^q onto the first q circle factors.
inline CellMap torus_projection(std::size_t n, std::size_t q, std::size_t m = 3) {
  if (q < 1 || q >= n) throw InputError("projection T^n -> T^q needs 1 <= q < n");
  auto src = share(torus(n, m));
  auto tgt = share(torus(q, m));
  std::vector<VertexId> vm(src->num_vertices());
  // Vertex ids are mixed-radix with the last coordinate fastest.
  std::size_t tail = 1;
  for (std::size_t i = q; i < n; ++i) tail *= m;
  for (std::size_t v = 0; v < vm.size(); ++v) vm[v] = static_cast<VertexId>(v / tail);
  return CellMap(src, tgt, std::move(vm));
}

}  // namespace widthlab
