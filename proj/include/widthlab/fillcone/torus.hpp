#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "widthlab/complexes/builders.hpp"

namespace widthlab {

/// The standard cubical torus with the given circle periods; vertex ids are
/// mixed radix with the last coordinate fastest.
struct TorusModel {
  std::vector<std::size_t> periods;

  std::size_t rank() const { return periods.size(); }

  std::vector<std::size_t> coordinates(VertexId v) const {
    std::vector<std::size_t> c(periods.size());
    std::size_t x = v;
    for (std::size_t i = periods.size(); i-- > 0;) {
      c[i] = x % periods[i];
      x /= periods[i];
    }
    return c;
  }

  VertexId vertex(const std::vector<std::size_t>& c) const {
    std::size_t id = 0;
    for (std::size_t i = 0; i < periods.size(); ++i) id = id * periods[i] + c[i] % periods[i];
    return static_cast<VertexId>(id);
  }
};

/// Recognizes a complex as torus(periods) from its vertex names "i1,...,in".
inline TorusModel torus_model(const CellComplex& t) {
  auto fail = [](const std::string& why) { return InputError("target is not a standard cubical torus model: " + why); };
  if (t.kind() != CellKind::cubical) throw fail("not cubical");
  if (t.num_vertices() == 0) throw fail("no vertices");
  std::vector<std::vector<std::size_t>> coords;
  for (const auto& name : t.vertex_names()) {
    std::vector<std::size_t> c;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) throw fail("vertex name '" + name + "' is not a coordinate tuple");
      c.push_back(std::stoul(part));
    }
    if (!coords.empty() && c.size() != coords.front().size()) throw fail("vertex names have different lengths");
    coords.push_back(std::move(c));
  }
  TorusModel model;
  model.periods.assign(coords.front().size(), 0);
  for (const auto& c : coords)
    for (std::size_t i = 0; i < c.size(); ++i) model.periods[i] = std::max(model.periods[i], c[i] + 1);
  for (auto p : model.periods)
    if (p < 3) throw fail("circle factors need at least 3 vertices");
  if (!(torus(model.periods) == t)) throw fail("cells differ from the product of circles");
  return model;
}

/// Increasing index sets of size d in {0..n-1}, lexicographic.
inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  if (d > n) return out;
  std::vector<std::size_t> cur(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (d - pos) <= n; ++i) {
      cur[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Integral cocycle φ_I = φ_{i1} ∪ ... ∪ φ_{id} on the d-cubes of the torus:
/// nonzero exactly on cubes spanning the coordinates I at the wrap position
/// of each, with the sign of the permutation sorting the cube's axes.
inline Vector<Integer> torus_cocycle(const CellComplex& t, const TorusModel& model, const std::vector<std::size_t>& index) {
  const std::size_t d = index.size();
  Vector<Integer> phi(t.count(d), Integer(0));
  for (std::size_t c = 0; c < t.count(d); ++c) {
    const auto& cell = t.cell(d, c);
    const auto origin = model.coordinates(cell[0]);
    std::vector<std::size_t> axis_coord(d);
    int value = 1;
    for (std::size_t a = 0; a < d && value != 0; ++a) {
      const auto next = model.coordinates(cell[std::size_t{1} << a]);
      std::size_t changed = model.rank();
      for (std::size_t i = 0; i < model.rank(); ++i)
        if (next[i] != origin[i]) changed = i;
      axis_coord[a] = changed;
      const std::size_t m = model.periods[changed];
      if (origin[changed] == m - 1 && next[changed] == 0)
        value *= 1;
      else if (origin[changed] == 0 && next[changed] == m - 1)
        value *= -1;
      else
        value = 0;
    }
    if (value == 0) continue;
    auto sorted = axis_coord;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != index) continue;
    phi[c] = Integer(value * detail::permutation_sign(axis_coord));
  }
  return phi;
}

/// ⟨φ_I, c⟩ for every I of size d: coordinates of a d-chain's class in H_d(T^n) ≅ Z^{C(n,d)}.
inline Vector<Integer> torus_class_coordinates(const CellComplex& t, const TorusModel& model, std::size_t d, const Vector<Integer>& chain) {
  Vector<Integer> out;
  for (const auto& index : index_subsets(model.rank(), d)) out.push_back(dot(torus_cocycle(t, model, index), chain));
  return out;
}

/// Cell map into torus(periods) given by target coordinates per source vertex.
inline CellMap map_into_torus(ComplexPtr source, const std::vector<std::size_t>& periods,
                              const std::function<std::vector<std::size_t>(VertexId)>& coords) {
  const TorusModel model{periods};
  std::vector<VertexId> vm(source->num_vertices());
  for (std::size_t v = 0; v < vm.size(); ++v) vm[v] = model.vertex(coords(static_cast<VertexId>(v)));
  return CellMap(std::move(source), share(torus(periods)), std::move(vm));
}

/// Coordinate sub-torus T^|axes| -> T^n putting source factor j on target axis axes[j].
inline CellMap subtorus_inclusion(std::size_t n, const std::vector<std::size_t>& axes, std::size_t m = 3) {
  const TorusModel src{std::vector<std::size_t>(axes.size(), m)};
  return map_into_torus(share(torus(axes.size(), m)), std::vector<std::size_t>(n, m), [&](VertexId v) {
    std::vector<std::size_t> c(n, 0);
    const auto s = src.coordinates(v);
    for (std::size_t j = 0; j < axes.size(); ++j) c[axes[j]] = s[j];
    return c;
  });
}

/// Circle with 3·degree vertices wrapping `degree` times around axis `axis` of T^n.
inline CellMap circle_cover(std::size_t n, std::size_t axis, std::size_t degree, std::size_t m = 3) {
  return map_into_torus(share(circle(m * degree)), std::vector<std::size_t>(n, m), [&](VertexId v) {
    std::vector<std::size_t> c(n, 0);
    c[axis] = v % m;
    return c;
  });
}

}  // namespace widthlab
