#pragma once

#include "widthlab/complexes/io.hpp"
#include "widthlab/ratmodels/lemmas.hpp"

namespace widthlab {

inline Rational rational_from_json(const Json& j, const std::string& what) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number_integer()) {
    s = std::to_string(j.get<long long>());
  } else {
    throw InputError(what + ": coefficients must be integer or rational strings");
  }
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos) throw InputError(what + ": bad rational '" + s + "'");
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw InputError(what + ": bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline unsigned unsigned_from_json(const Json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<unsigned>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!s.empty() && s.size() < 10 && s.find_first_not_of("0123456789") == std::string::npos) return static_cast<unsigned>(std::stoul(s));
  }
  throw InputError(what + " must be a nonnegative integer");
}

/// {key: coefficient}, keys as produced by GradedAlgebra::key_name.
inline AlgebraElement element_from_json(const GradedAlgebra& a, const Json& j) {
  if (!j.is_object()) throw InputError("algebra element must be an object {monomial: coefficient}");
  AlgebraElement e;
  for (const auto& [k, v] : j.items()) accumulate(e, a.parse_key(k), rational_from_json(v, "element"));
  return e;
}

inline Json element_to_json(const GradedAlgebra& a, const AlgebraElement& e) {
  Json o = Json::object();
  for (const auto& [k, c] : e) o[a.key_name(k)] = c.get_str();
  return o;
}

/// {generators: [{name, degree}], relations: "free" | {structure_constants: [{left, right, result}]}}.
inline GradedAlgebra algebra_from_json(const Json& j) {
  const auto& gj = detail::require(j, "generators", "algebra");
  if (!gj.is_array()) throw InputError("algebra: 'generators' must be an array");
  std::vector<AlgebraGenerator> gens;
  std::map<std::string, std::size_t> index;
  for (const auto& g : gj) {
    AlgebraGenerator ag{detail::require(g, "name", "generator").get<std::string>(), unsigned_from_json(detail::require(g, "degree", "generator"), "generator degree")};
    if (!index.emplace(ag.name, gens.size()).second) throw InputError("algebra: duplicate generator '" + ag.name + "'");
    gens.push_back(std::move(ag));
  }
  if (!j.contains("relations") || j.at("relations") == "free") return GradedAlgebra::free(std::move(gens));
  const auto& rel = j.at("relations");
  const auto& sc = detail::require(rel, "structure_constants", "algebra relations");
  if (!sc.is_array()) throw InputError("algebra: 'structure_constants' must be an array");
  auto idx = [&](const Json& n) {
    if (!n.is_string() || !index.count(n.get<std::string>())) throw InputError("algebra: unknown basis element in product");
    return index.at(n.get<std::string>());
  };
  std::map<std::pair<std::size_t, std::size_t>, AlgebraElement> products;
  for (const auto& p : sc) {
    const auto i = idx(detail::require(p, "left", "product")), k = idx(detail::require(p, "right", "product"));
    const auto& r = detail::require(p, "result", "product");
    if (!r.is_object()) throw InputError("product: 'result' must be an object");
    AlgebraElement e;
    for (const auto& [name, c] : r.items()) accumulate(e, BasisKey{static_cast<unsigned>(idx(Json(name)))}, rational_from_json(c, "product"));
    products[{i, k}] = e;
  }
  return GradedAlgebra::finite(std::move(gens), products);
}

inline Json algebra_to_json(const GradedAlgebra& a) {
  Json gens = Json::array();
  for (const auto& g : a.generators()) gens.push_back(Json{{"name", g.name}, {"degree", std::to_string(g.degree)}});
  Json out{{"generators", gens}};
  if (a.kind() == GradedAlgebra::Kind::free) {
    out["relations"] = "free";
  } else {
    Json sc = Json::array();
    for (std::size_t i = 0; i < a.num_generators(); ++i)
      for (std::size_t k = i; k < a.num_generators(); ++k) {
        const auto prod = a.multiply(a.basis_element(i), a.basis_element(k));
        if (!prod.empty()) sc.push_back(Json{{"left", a.generators()[i].name}, {"right", a.generators()[k].name}, {"result", element_to_json(a, prod)}});
      }
    out["relations"] = Json{{"structure_constants", sc}};
  }
  return out;
}

inline std::vector<AlgebraElement> images_from_json(const GradedAlgebra& target, const Json& j) {
  if (!j.is_array()) throw InputError("'images' must be an array of elements");
  std::vector<AlgebraElement> out;
  for (const auto& e : j) out.push_back(element_from_json(target, e));
  return out;
}

/// {source: algebra, target: algebra, images: [element per source generator]}.
inline AlgebraMorphism morphism_from_json(const Json& j) {
  auto src = std::make_shared<const GradedAlgebra>(algebra_from_json(detail::require(j, "source", "morphism")));
  auto tgt = std::make_shared<const GradedAlgebra>(algebra_from_json(detail::require(j, "target", "morphism")));
  return AlgebraMorphism(src, tgt, images_from_json(*tgt, detail::require(j, "images", "morphism")));
}

inline Json morphism_to_json(const AlgebraMorphism& f) {
  Json images = Json::array();
  for (const auto& im : f.images()) images.push_back(element_to_json(f.target(), im));
  return Json{{"source", algebra_to_json(f.source())}, {"target", algebra_to_json(f.target())}, {"images", images}};
}

}  // namespace widthlab
