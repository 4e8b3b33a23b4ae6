#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "widthlab/errors.hpp"

namespace widthlab {

enum class CellKind { simplicial, cubical };

inline std::string to_string(CellKind k) { return k == CellKind::simplicial ? "simplicial" : "cubical"; }

using VertexId = std::uint32_t;

/// Ordered vertex tuple of a cell.
///
/// Simplices list their vertices in increasing order. A d-cube lists its 2^d
/// corners so that position m (read as a bit string) is the corner whose
/// i-th coordinate is bit i of m; this layout carries the orientation.
using CellTuple = std::vector<VertexId>;

struct OrientedCell {
  CellTuple tuple;
  int sign = 1;  // [given tuple] = sign * [tuple]
};

struct CellRef {
  std::size_t dim = 0;
  std::size_t index = 0;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

inline bool has_repeats(CellTuple t) {
  std::sort(t.begin(), t.end());
  return std::adjacent_find(t.begin(), t.end()) != t.end();
}

}  // namespace detail

namespace cube {

inline std::optional<std::size_t> dimension_of(std::size_t corners) {
  if (corners == 0 || !std::has_single_bit(corners)) return std::nullopt;
  return static_cast<std::size_t>(std::countr_zero(corners));
}

/// Canonical layout: the smallest vertex is the origin corner and axes are
/// ordered by the id of the origin's neighbour along them.
inline OrientedCell canonicalize(const CellTuple& t) {
  const std::size_t n = t.size();
  const auto d = dimension_of(n);
  if (!d) throw ComplexError("cube with a corner count that is not a power of two");
  const std::size_t origin = static_cast<std::size_t>(std::min_element(t.begin(), t.end()) - t.begin());
  std::vector<std::size_t> axes(*d);
  std::iota(axes.begin(), axes.end(), 0);
  std::sort(axes.begin(), axes.end(), [&](std::size_t a, std::size_t b) {
    return t[origin ^ (std::size_t{1} << a)] < t[origin ^ (std::size_t{1} << b)];
  });
  CellTuple out(n);
  for (std::size_t mp = 0; mp < n; ++mp) {
    std::size_t m = origin;
    for (std::size_t j = 0; j < *d; ++j)
      if ((mp >> j) & 1u) m ^= std::size_t{1} << axes[j];
    out[mp] = t[m];
  }
  int sign = detail::permutation_sign(axes);
  if (std::popcount(origin) & 1) sign = -sign;
  return {std::move(out), sign};
}

/// Boundary of a laid-out cube: sum over axes a of (-1)^a (front_a - back_a).
inline std::vector<std::pair<CellTuple, int>> boundary_faces(const CellTuple& t) {
  const auto d = *dimension_of(t.size());
  std::vector<std::pair<CellTuple, int>> faces;
  if (d == 0) return faces;
  const std::size_t half = t.size() / 2;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t eps = 0; eps < 2; ++eps) {
      CellTuple f(half);
      for (std::size_t mp = 0; mp < half; ++mp) {
        const std::size_t low = mp & ((std::size_t{1} << a) - 1);
        const std::size_t high = (mp >> a) << (a + 1);
        f[mp] = t[low | (eps << a) | high];
      }
      int sign = (a % 2 == 0) ? 1 : -1;
      if (eps == 0) sign = -sign;
      faces.emplace_back(std::move(f), sign);
    }
  }
  return faces;
}

}  // namespace cube

namespace simplex {

inline OrientedCell canonicalize(const CellTuple& t) {
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  CellTuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[order[i]];
  return {std::move(out), detail::permutation_sign(order)};
}

inline std::vector<std::pair<CellTuple, int>> boundary_faces(const CellTuple& t) {
  std::vector<std::pair<CellTuple, int>> faces;
  if (t.size() <= 1) return faces;
  for (std::size_t i = 0; i < t.size(); ++i) {
    CellTuple f;
    f.reserve(t.size() - 1);
    for (std::size_t j = 0; j < t.size(); ++j)
      if (j != i) f.push_back(t[j]);
    faces.emplace_back(std::move(f), (i % 2 == 0) ? 1 : -1);
  }
  return faces;
}

}  // namespace simplex

inline std::optional<std::size_t> cell_dimension(CellKind kind, std::size_t tuple_size) {
  if (kind == CellKind::simplicial) {
    if (tuple_size == 0) return std::nullopt;
    return tuple_size - 1;
  }
  return cube::dimension_of(tuple_size);
}

inline OrientedCell canonicalize(CellKind kind, const CellTuple& t) {
  return kind == CellKind::simplicial ? simplex::canonicalize(t) : cube::canonicalize(t);
}

inline std::vector<std::pair<CellTuple, int>> boundary_faces(CellKind kind, const CellTuple& t) {
  return kind == CellKind::simplicial ? simplex::boundary_faces(t) : cube::boundary_faces(t);
}

/// A finite simplicial or cubical complex with a deterministic cell order:
/// within each dimension, cells are sorted lexicographically by canonical tuple.
class CellComplex {
 public:
  enum class Closure { require, generate };

  CellComplex() = default;

  static CellComplex from_cells(CellKind kind, std::vector<std::string> vertex_names, const std::vector<CellTuple>& cells,
                                Closure closure = Closure::generate) {
    CellComplex x;
    x.kind_ = kind;
    x.names_ = std::move(vertex_names);
    for (std::size_t v = 0; v < x.names_.size(); ++v) {
      if (!x.name_index_.emplace(x.names_[v], static_cast<VertexId>(v)).second)
        throw ComplexError("duplicate vertex name '" + x.names_[v] + "'");
    }
    std::vector<std::set<CellTuple>> by_dim;
    auto insert = [&](const CellTuple& raw) {
      const auto d = cell_dimension(kind, raw.size());
      if (!d) throw ComplexError("cell with invalid vertex count " + std::to_string(raw.size()) + " for a " + to_string(kind) + " complex");
      for (auto v : raw)
        if (v >= x.names_.size()) throw ComplexError("cell references unknown vertex id " + std::to_string(v));
      if (detail::has_repeats(raw)) throw ComplexError("cell with a repeated vertex");
      if (by_dim.size() <= *d) by_dim.resize(*d + 1);
      return by_dim[*d].insert(canonicalize(kind, raw).tuple).second;
    };
    for (std::size_t v = 0; v < x.names_.size(); ++v) insert(CellTuple{static_cast<VertexId>(v)});
    for (const auto& c : cells) insert(c);
    // Close under faces, top-down.
    for (std::size_t d = by_dim.size(); d-- > 1;) {
      for (const auto& c : by_dim[d]) {
        for (const auto& [face, sign] : boundary_faces(kind, c)) {
          auto canon = canonicalize(kind, face).tuple;
          if (!by_dim[d - 1].count(canon)) {
            if (closure == Closure::require) throw ComplexError("complex is not closed under faces: a face of a " + std::to_string(d) + "-cell is missing");
            by_dim[d - 1].insert(std::move(canon));
          }
        }
      }
    }
    x.cells_.resize(by_dim.size());
    x.index_.resize(by_dim.size());
    for (std::size_t d = 0; d < by_dim.size(); ++d) {
      x.cells_[d].assign(by_dim[d].begin(), by_dim[d].end());
      for (std::size_t i = 0; i < x.cells_[d].size(); ++i) {
        CellTuple key = x.cells_[d][i];
        std::sort(key.begin(), key.end());
        if (!x.index_[d].emplace(std::move(key), i).second)
          throw ComplexError("two " + std::to_string(d) + "-cells share the same vertex set");
      }
    }
    x.build_boundaries();
    return x;
  }

  CellKind kind() const { return kind_; }
  /// Top cell dimension; -1 for the empty complex.
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t num_vertices() const { return names_.size(); }
  std::size_t count(std::size_t d) const { return d < cells_.size() ? cells_[d].size() : 0; }
  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> c;
    for (const auto& v : cells_) c.push_back(v.size());
    return c;
  }
  std::size_t total_cells() const {
    std::size_t n = 0;
    for (const auto& v : cells_) n += v.size();
    return n;
  }
  const CellTuple& cell(std::size_t d, std::size_t i) const { return cells_.at(d).at(i); }
  const std::vector<CellTuple>& cells(std::size_t d) const { return cells_.at(d); }

  const std::string& vertex_name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  std::optional<VertexId> vertex_id(const std::string& name) const {
    auto it = name_index_.find(name);
    if (it == name_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Looks a cell up by its vertex set (any order).
  std::optional<CellRef> find(CellTuple vertices) const {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    const auto d = cell_dimension(kind_, vertices.size());
    if (!d || *d >= index_.size()) return std::nullopt;
    auto it = index_[*d].find(vertices);
    if (it == index_[*d].end()) return std::nullopt;
    return CellRef{*d, it->second};
  }

  /// (face index, incidence sign) pairs of the boundary of cell (d, i).
  const std::vector<std::pair<std::size_t, int>>& boundary(std::size_t d, std::size_t i) const { return boundary_.at(d).at(i); }

  std::string describe(std::size_t d, std::size_t i) const {
    std::string s = "[";
    const auto& t = cell(d, i);
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += " ";
      s += names_[t[k]];
    }
    return s + "]";
  }

  friend bool operator==(const CellComplex& a, const CellComplex& b) {
    return a.kind_ == b.kind_ && a.names_ == b.names_ && a.cells_ == b.cells_;
  }

 private:
  void build_boundaries() {
    boundary_.assign(cells_.size(), {});
    for (std::size_t d = 0; d < cells_.size(); ++d) {
      boundary_[d].resize(cells_[d].size());
      if (d == 0) continue;
      for (std::size_t i = 0; i < cells_[d].size(); ++i) {
        std::map<std::size_t, int> acc;
        for (const auto& [face, sign] : boundary_faces(kind_, cells_[d][i])) {
          const auto canon = canonicalize(kind_, face);
          const auto ref = find(canon.tuple);
          acc[ref->index] += sign * canon.sign;
        }
        for (auto [f, s] : acc)
          if (s != 0) boundary_[d][i].emplace_back(f, s);
      }
    }
  }

  CellKind kind_ = CellKind::simplicial;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> name_index_;
  std::vector<std::vector<CellTuple>> cells_;
  std::vector<std::map<CellTuple, std::size_t>> index_;
  std::vector<std::vector<std::vector<std::pair<std::size_t, int>>>> boundary_;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

inline ComplexPtr share(CellComplex x) { return std::make_shared<const CellComplex>(std::move(x)); }

/// A subcomplex of a fixed ambient complex, as sorted cell-index lists per dimension.
class Subcomplex {
 public:
  Subcomplex() = default;

  static Subcomplex empty(const CellComplex& x) {
    Subcomplex s;
    s.members_.resize(x.dimension() + 1);
    for (std::size_t d = 0; d < s.members_.size(); ++d) s.members_[d].assign(x.count(d), false);
    return s;
  }

  static Subcomplex full(const CellComplex& x) {
    Subcomplex s = empty(x);
    for (auto& m : s.members_) std::fill(m.begin(), m.end(), true);
    return s;
  }

  /// All cells satisfying `pred`; throws if the result is not closed under faces.
  template <class Pred>
  static Subcomplex from_predicate(const CellComplex& x, Pred&& pred) {
    Subcomplex s = empty(x);
    for (std::size_t d = 0; d < s.members_.size(); ++d)
      for (std::size_t i = 0; i < x.count(d); ++i) s.members_[d][i] = pred(CellRef{d, i});
    s.validate(x);
    return s;
  }

  /// Smallest subcomplex containing the given cells.
  static Subcomplex generated_by(const CellComplex& x, const std::vector<CellRef>& cells) {
    Subcomplex s = empty(x);
    std::vector<CellRef> stack = cells;
    while (!stack.empty()) {
      auto c = stack.back();
      stack.pop_back();
      if (s.members_.at(c.dim).at(c.index)) continue;
      s.members_[c.dim][c.index] = true;
      if (c.dim > 0)
        for (auto [f, sign] : x.boundary(c.dim, c.index)) stack.push_back({c.dim - 1, f});
      // Boundaries with cancelling incidences (none for these complexes) would miss faces;
      // walk the raw faces as well.
      if (c.dim > 0) {
        for (const auto& [face, sign] : boundary_faces(x.kind(), x.cell(c.dim, c.index))) {
          auto ref = x.find(face);
          if (ref) stack.push_back(*ref);
        }
      }
    }
    return s;
  }

  void validate(const CellComplex& x) const {
    if (members_.size() != static_cast<std::size_t>(x.dimension() + 1)) throw ComplexError("subcomplex shape does not match ambient complex");
    for (std::size_t d = 1; d < members_.size(); ++d)
      for (std::size_t i = 0; i < members_[d].size(); ++i) {
        if (!members_[d][i]) continue;
        for (const auto& [face, sign] : boundary_faces(x.kind(), x.cell(d, i))) {
          auto ref = x.find(face);
          if (!ref || !members_[d - 1][ref->index]) throw ComplexError("not a subcomplex: face of " + x.describe(d, i) + " missing");
        }
      }
  }

  bool contains(CellRef c) const { return c.dim < members_.size() && members_[c.dim][c.index]; }
  bool contains(std::size_t d, std::size_t i) const { return contains(CellRef{d, i}); }

  std::vector<std::size_t> indices(std::size_t d) const {
    std::vector<std::size_t> out;
    if (d >= members_.size()) return out;
    for (std::size_t i = 0; i < members_[d].size(); ++i)
      if (members_[d][i]) out.push_back(i);
    return out;
  }

  std::size_t count(std::size_t d) const { return indices(d).size(); }
  std::size_t levels() const { return members_.size(); }

  bool is_empty() const {
    for (const auto& m : members_)
      if (std::find(m.begin(), m.end(), true) != m.end()) return false;
    return true;
  }

  bool is_subset_of(const Subcomplex& o) const {
    for (std::size_t d = 0; d < members_.size(); ++d)
      for (std::size_t i = 0; i < members_[d].size(); ++i)
        if (members_[d][i] && !o.contains(d, i)) return false;
    return true;
  }

  Subcomplex united_with(const Subcomplex& o) const {
    Subcomplex s = *this;
    for (std::size_t d = 0; d < s.members_.size(); ++d)
      for (std::size_t i = 0; i < s.members_[d].size(); ++i) s.members_[d][i] = s.members_[d][i] || o.contains(d, i);
    return s;
  }

  friend bool operator==(const Subcomplex&, const Subcomplex&) = default;

 private:
  std::vector<std::vector<bool>> members_;
};

}  // namespace widthlab
