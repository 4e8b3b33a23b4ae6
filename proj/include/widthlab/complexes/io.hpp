#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "widthlab/complexes/cell_map.hpp"

namespace widthlab {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become InputError with 1-based line and column.
inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON (" + what + ")");
  }
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string vertex_name_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError("vertex names must be strings or integers");
}

}  // namespace detail

template <ExactScalar T>
Json to_json_vector(const Vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

template <ExactScalar T>
Json to_json_matrix(const Matrix<T>& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json_vector(m.row(i)));
  return a;
}

template <ExactScalar T>
Json to_json_sparse(const SparseMatrix<T>& m) {
  Json entries = Json::array();
  for (const auto& e : m.entries()) entries.push_back(Json::array({std::to_string(e.row), std::to_string(e.col), to_string(e.value)}));
  return Json{{"rows", std::to_string(m.rows())}, {"cols", std::to_string(m.cols())}, {"entries", entries}};
}

/// Sparse chain as {cell description: coefficient}.
template <ExactScalar T>
Json chain_to_json(const CellComplex& x, std::size_t d, const Vector<T>& chain) {
  Json o = Json::object();
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (!is_zero(chain[i])) o[x.describe(d, i)] = to_string(chain[i]);
  return o;
}

inline Json complex_to_json(const CellComplex& x) {
  Json cells = Json::array();
  for (int d = 0; d <= x.dimension(); ++d) {
    Json level = Json::array();
    for (const auto& t : x.cells(d)) {
      Json c = Json::array();
      for (auto v : t) c.push_back(x.vertex_name(v));
      level.push_back(c);
    }
    cells.push_back(level);
  }
  return Json{{"kind", to_string(x.kind())}, {"vertices", x.vertex_names()}, {"cells", cells}};
}

/// Accepts `cells` either grouped per dimension or as one flat list of vertex tuples.
inline CellComplex complex_from_json(const Json& j) {
  const std::string what = "complex";
  const auto kind_s = detail::require(j, "kind", what);
  if (!kind_s.is_string()) throw InputError("complex: 'kind' must be a string");
  CellKind kind;
  if (kind_s == "simplicial") {
    kind = CellKind::simplicial;
  } else if (kind_s == "cubical") {
    kind = CellKind::cubical;
  } else {
    throw InputError("complex: unknown kind '" + kind_s.get<std::string>() + "'");
  }
  const auto& verts = detail::require(j, "vertices", what);
  if (!verts.is_array()) throw InputError("complex: 'vertices' must be an array");
  std::vector<std::string> names;
  std::map<std::string, VertexId> ids;
  for (const auto& v : verts) {
    names.push_back(detail::vertex_name_of(v));
    if (!ids.emplace(names.back(), static_cast<VertexId>(names.size() - 1)).second)
      throw ComplexError("duplicate vertex name '" + names.back() + "'");
  }
  std::vector<CellTuple> cells;
  auto add_cell = [&](const Json& c) {
    if (!c.is_array()) throw InputError("complex: a cell must be an array of vertex names");
    CellTuple t;
    for (const auto& v : c) {
      const auto n = detail::vertex_name_of(v);
      auto it = ids.find(n);
      if (it == ids.end()) throw ComplexError("cell uses undeclared vertex '" + n + "'");
      t.push_back(it->second);
    }
    cells.push_back(std::move(t));
  };
  const Json empty = Json::array();
  const auto& cj = j.contains("cells") ? j.at("cells") : empty;
  if (!cj.is_array()) throw InputError("complex: 'cells' must be an array");
  for (const auto& entry : cj) {
    if (entry.is_array() && !entry.empty() && entry.front().is_array()) {
      for (const auto& c : entry) add_cell(c);
    } else if (entry.is_array() && entry.empty()) {
      continue;
    } else {
      add_cell(entry);
    }
  }
  return CellComplex::from_cells(kind, std::move(names), cells);
}

inline Json map_to_json(const CellMap& f) {
  Json vm = Json::object();
  for (std::size_t v = 0; v < f.source().num_vertices(); ++v)
    vm[f.source().vertex_name(static_cast<VertexId>(v))] = f.target().vertex_name(f(static_cast<VertexId>(v)));
  return Json{{"source", complex_to_json(f.source())}, {"target", complex_to_json(f.target())}, {"vertex_map", vm}};
}

/// `source` / `target` may be inline complexes or paths relative to `base`.
inline ComplexPtr complex_ref_from_json(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return share(complex_from_json(read_json_file(base / j.get<std::string>())));
  return share(complex_from_json(j));
}

inline CellMap map_from_json(const Json& j, const std::filesystem::path& base = ".") {
  auto src = complex_ref_from_json(detail::require(j, "source", "map"), base);
  auto tgt = complex_ref_from_json(detail::require(j, "target", "map"), base);
  const auto& vm = detail::require(j, "vertex_map", "map");
  std::map<std::string, std::string> names;
  if (vm.is_object()) {
    for (const auto& [k, v] : vm.items()) names[k] = detail::vertex_name_of(v);
  } else if (vm.is_array()) {
    for (const auto& pair : vm) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("map: vertex_map pairs must be [source, target]");
      names[detail::vertex_name_of(pair[0])] = detail::vertex_name_of(pair[1]);
    }
  } else {
    throw InputError("map: 'vertex_map' must be an object or a list of pairs");
  }
  return CellMap::from_names(src, tgt, names);
}

}  // namespace widthlab
