#pragma once

#include <optional>
#include <string>
#include <vector>

#include "widthlab/complexes/builders.hpp"
#include "widthlab/complexes/homology.hpp"
#include "widthlab/parallel.hpp"

namespace widthlab {

/// Point preimage of a target vertex: the full subcomplex on f^{-1}(v).
inline Subcomplex vertex_fiber(const CellMap& f, VertexId v) {
  if (v >= f.target().num_vertices()) throw InputError("vertex_fiber: target has no vertex " + std::to_string(v));
  return full_subcomplex(f.source(), [&](VertexId w) { return f(w) == v; });
}

/// F_σ: source cells carried into the closed target cell σ.
inline Subcomplex closed_cell_preimage(const CellMap& f, CellRef sigma) {
  return f.preimage(Subcomplex::generated_by(f.target(), {sigma}));
}

struct WidthDegree {
  std::size_t degree = 0;
  std::size_t width = 0;
  VertexId witness = 0;
  std::vector<VertexId> witnesses;
  std::vector<std::size_t> vertex_ranks;
  /// Upper envelope over closed-cell preimages, in target cell order (dimension, then index).
  std::size_t closed_cell_width = 0;
  CellRef closed_cell_witness;
  std::vector<std::pair<CellRef, std::size_t>> closed_cell_ranks;
};

struct WidthReport {
  Ring ring = Ring::Z;
  std::size_t subdivisions = 0;
  std::shared_ptr<const CellMap> map;  // the map actually evaluated (after subdivision)
  std::vector<WidthDegree> degrees;

  const WidthDegree& degree(std::size_t k) const { return degrees.at(k); }
};

namespace detail {

template <ExactScalar T>
std::vector<WidthDegree> width_degrees(const CellMap& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto cx = chain_complex<T>(x);
  const std::size_t top = cx.cells.size();
  std::vector<HomologyGroup<T>> hx(top);
  parallel_for(top, [&](std::size_t k) { hx[k] = homology_in_degree(cx, k); });

  std::vector<CellRef> cells;
  for (int d = 0; d <= y.dimension(); ++d)
    for (std::size_t i = 0; i < y.count(d); ++i) cells.push_back({static_cast<std::size_t>(d), i});

  // ranks[c][k]; vertex cells come first in `cells`, and for them F_v is the point fiber.
  std::vector<std::vector<std::size_t>> vertex_ranks(y.num_vertices()), cell_ranks(cells.size());
  parallel_for(y.num_vertices(), [&](std::size_t v) {
    const auto fiber = vertex_fiber(f, static_cast<VertexId>(v));
    vertex_ranks[v].resize(top);
    for (std::size_t k = 0; k < top; ++k) vertex_ranks[v][k] = restriction_rank(x, hx[k], fiber, k);
  });
  parallel_for(cells.size(), [&](std::size_t c) {
    const auto pre = closed_cell_preimage(f, cells[c]);
    cell_ranks[c].resize(top);
    for (std::size_t k = 0; k < top; ++k) cell_ranks[c][k] = restriction_rank(x, hx[k], pre, k);
  });

  std::vector<WidthDegree> out(top);
  for (std::size_t k = 0; k < top; ++k) {
    auto& w = out[k];
    w.degree = k;
    for (std::size_t v = 0; v < y.num_vertices(); ++v) {
      // Vertex ids index cells(0) in order: vertex cells are {v}.
      const std::size_t r = vertex_ranks[v][k];
      w.vertex_ranks.push_back(r);
      if (v == 0 || r > w.width) {
        w.width = r;
        w.witness = static_cast<VertexId>(v);
      }
    }
    for (std::size_t v = 0; v < y.num_vertices(); ++v)
      if (w.vertex_ranks[v] == w.width) w.witnesses.push_back(static_cast<VertexId>(v));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::size_t r = cell_ranks[c][k];
      w.closed_cell_ranks.emplace_back(cells[c], r);
      if (c == 0 || r > w.closed_cell_width) {
        w.closed_cell_width = r;
        w.closed_cell_witness = cells[c];
      }
    }
  }
  return out;
}

}  // namespace detail

/// Degree-k cohomological width of a given map over vertex fibers, for every
/// k up to the source dimension; `subdivisions` refines source and target first.
inline WidthReport width_report(const CellMap& f, Ring ring, std::size_t subdivisions = 0) {
  WidthReport report;
  report.ring = ring;
  report.subdivisions = subdivisions;
  auto current = std::make_shared<const CellMap>(f);
  for (std::size_t s = 0; s < subdivisions; ++s) {
    const auto src = subdivide(current->source());
    const auto tgt = subdivide(current->target());
    current = std::make_shared<const CellMap>(subdivide_map(*current, src, tgt));
  }
  report.map = current;
  report.degrees = with_ring(ring, [&]<class T>() { return detail::width_degrees<T>(*current); });
  return report;
}

/// The coordinate projection T^n -> T^q, whose degree-1 width is n - q.
inline CellMap sharpness_example(std::size_t n, std::size_t q) {
  if (q < 1 || q >= n) throw InputError("sharpness_example needs 1 <= q < n (got n=" + std::to_string(n) + ", q=" + std::to_string(q) + ")");
  return torus_projection(n, q);
}

}  // namespace widthlab
