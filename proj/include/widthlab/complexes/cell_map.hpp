#pragma once

#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "widthlab/complexes/chain_complex.hpp"

namespace widthlab {

/// Image of one source cell: the target cell it is carried onto, and the
/// incidence of the chain map (0 when the image has lower dimension).
struct CellImage {
  CellRef cell;
  int sign = 0;
};

/// A vertex map that carries every source cell onto a target cell.
///
/// For cubical complexes a cube may only collapse by a coordinate
/// projection followed by an isomorphism onto a target cube; anything else is
/// rejected because it would not induce a chain map.
class CellMap {
 public:
  CellMap(ComplexPtr source, ComplexPtr target, std::vector<VertexId> vertex_map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
    if (!source_ || !target_) throw MapError("cell map needs a source and a target");
    if (source_->kind() != target_->kind())
      throw MapError("cell map between a " + to_string(source_->kind()) + " and a " + to_string(target_->kind()) + " complex");
    if (map_.size() != source_->num_vertices()) throw MapError("vertex map does not cover every source vertex");
    for (auto v : map_)
      if (v >= target_->num_vertices()) throw MapError("vertex map hits an unknown target vertex");
    build_images();
    verify_chain_map();
  }

  static CellMap from_names(ComplexPtr source, ComplexPtr target, const std::map<std::string, std::string>& names) {
    std::vector<VertexId> vm(source->num_vertices(), 0);
    std::vector<bool> seen(source->num_vertices(), false);
    for (const auto& [from, to] : names) {
      auto s = source->vertex_id(from);
      if (!s) throw MapError("vertex map names unknown source vertex '" + from + "'");
      auto t = target->vertex_id(to);
      if (!t) throw MapError("vertex map names unknown target vertex '" + to + "'");
      vm[*s] = *t;
      seen[*s] = true;
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
      if (!seen[v]) throw MapError("vertex map misses source vertex '" + source->vertex_name(static_cast<VertexId>(v)) + "'");
    return CellMap(std::move(source), std::move(target), std::move(vm));
  }

  /// Identity map of a complex.
  static CellMap identity(ComplexPtr x) {
    std::vector<VertexId> vm(x->num_vertices());
    std::iota(vm.begin(), vm.end(), 0);
    return CellMap(x, x, std::move(vm));
  }

  const CellComplex& source() const { return *source_; }
  const CellComplex& target() const { return *target_; }
  const ComplexPtr& source_ptr() const { return source_; }
  const ComplexPtr& target_ptr() const { return target_; }
  VertexId operator()(VertexId v) const { return map_.at(v); }
  const std::vector<VertexId>& vertex_map() const { return map_; }

  const CellImage& image(std::size_t d, std::size_t i) const { return images_.at(d).at(i); }

  /// Chain map C_d(source) -> C_d(target).
  template <ExactScalar T>
  SparseMatrix<T> chain_map(std::size_t d) const {
    std::vector<typename SparseMatrix<T>::Entry> entries;
    for (std::size_t i = 0; i < source_->count(d); ++i) {
      const auto& im = images_[d][i];
      if (im.sign == 0) continue;
      const T v = convert<T>(Integer(im.sign));
      if (!is_zero(v)) entries.push_back({im.cell.index, i, v});
    }
    return SparseMatrix<T>::from_entries(target_->count(d), source_->count(d), std::move(entries));
  }

  template <ExactScalar T>
  Vector<T> push_chain(std::size_t d, const Vector<T>& chain) const {
    Vector<T> out(target_->count(d), T(0));
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (is_zero(chain[i])) continue;
      const auto& im = images_[d][i];
      if (im.sign == 0) continue;
      out[im.cell.index] += convert<T>(Integer(im.sign)) * chain[i];
    }
    return out;
  }

  /// g ∘ this.
  CellMap then(const CellMap& g) const {
    if (!(g.source() == *target_)) throw MapError("composition of non-composable cell maps");
    std::vector<VertexId> vm(map_.size());
    for (std::size_t v = 0; v < map_.size(); ++v) vm[v] = g(map_[v]);
    return CellMap(source_, g.target_ptr(), std::move(vm));
  }

  /// Source cells whose image lies in the closed target cell `sigma` (all target cells in `region`).
  Subcomplex preimage(const Subcomplex& region) const {
    return Subcomplex::from_predicate(*source_, [&](CellRef c) { return region.contains(images_[c.dim][c.index].cell); });
  }

 private:
  void build_images() {
    images_.resize(source_->dimension() + 1);
    for (std::size_t d = 0; d < images_.size(); ++d) {
      images_[d].resize(source_->count(d));
      for (std::size_t i = 0; i < source_->count(d); ++i) images_[d][i] = compute_image(d, source_->cell(d, i));
    }
  }

  std::string describe_source(const CellTuple& t) const {
    std::string s = "[";
    for (std::size_t k = 0; k < t.size(); ++k) s += (k ? " " : "") + source_->vertex_name(t[k]);
    return s + "]";
  }

  CellImage compute_image(std::size_t d, const CellTuple& t) const {
    CellTuple mapped(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) mapped[k] = map_[t[k]];
    if (source_->kind() == CellKind::simplicial) {
      CellTuple distinct = mapped;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      auto ref = target_->find(distinct);
      if (!ref) throw MapError("simplex " + describe_source(t) + " is not carried onto a target simplex");
      if (distinct.size() < mapped.size()) return {*ref, 0};
      return {*ref, simplex::canonicalize(mapped).sign};
    }
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < d; ++a) {
      bool collapsed = true;
      for (std::size_t m = 0; m < mapped.size() && collapsed; ++m)
        collapsed = mapped[m] == mapped[m ^ (std::size_t{1} << a)];
      if (!collapsed) kept.push_back(a);
    }
    CellTuple reduced(std::size_t{1} << kept.size());
    for (std::size_t mm = 0; mm < reduced.size(); ++mm) {
      std::size_t m = 0;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if ((mm >> j) & 1u) m |= std::size_t{1} << kept[j];
      reduced[mm] = mapped[m];
    }
    if (detail::has_repeats(reduced)) throw MapError("cube " + describe_source(t) + " is folded rather than projected by the vertex map");
    const auto canon = cube::canonicalize(reduced);
    auto ref = target_->find(canon.tuple);
    if (!ref || target_->cell(ref->dim, ref->index) != canon.tuple)
      throw MapError("cube " + describe_source(t) + " is not carried onto a target cube");
    if (kept.size() < d) return {*ref, 0};
    return {*ref, canon.sign};
  }

  void verify_chain_map() const {
    for (std::size_t d = 1; d < images_.size(); ++d) {
      for (std::size_t i = 0; i < source_->count(d); ++i) {
        std::map<std::size_t, long> lhs, rhs;
        const auto& im = images_[d][i];
        if (im.sign != 0)
          for (auto [f, s] : target_->boundary(d, im.cell.index)) lhs[f] += long(s) * im.sign;
        for (auto [f, s] : source_->boundary(d, i)) {
          const auto& fi = images_[d - 1][f];
          if (fi.sign != 0) rhs[fi.cell.index] += long(s) * fi.sign;
        }
        std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
        if (lhs != rhs) throw MapError("vertex map does not induce a chain map at cell " + source_->describe(d, i));
      }
    }
  }

  ComplexPtr source_, target_;
  std::vector<VertexId> map_;
  std::vector<std::vector<CellImage>> images_;
};

}  // namespace widthlab
