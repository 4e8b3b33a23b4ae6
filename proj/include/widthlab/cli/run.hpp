#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "widthlab/complexes/builders.hpp"
#include "widthlab/complexes/homology.hpp"
#include "widthlab/complexes/io.hpp"
#include "widthlab/cyclespace/canonical_cycle.hpp"
#include "widthlab/fillcone/cone.hpp"
#include "widthlab/fillcone/essential.hpp"
#include "widthlab/fillcone/lattice.hpp"
#include "widthlab/ratmodels/io.hpp"
#include "widthlab/width/width.hpp"

namespace widthlab::cli {

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> complex;
  std::optional<std::string> map;
  std::optional<std::string> ring;
  std::optional<std::size_t> bound;
  std::string mode = "global";
  std::size_t subdivide = 0;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
};

enum ExitCode { computed = 0, input_error = 1, invariant_violation = 2 };

namespace detail {

inline std::string s(std::size_t v) { return std::to_string(v); }

inline Ring ring_of(const RunConfig& c, Ring fallback) {
  if (!c.ring) return fallback;
  try {
    return parse_ring(*c.ring);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

inline const std::string& need(const std::optional<std::string>& v, const char* flag, const std::string& sub) {
  if (!v) throw InputError(sub + " needs " + flag);
  return *v;
}

inline CellMap load_map(const std::string& path) {
  const std::filesystem::path p(path);
  return map_from_json(read_json_file(p), p.parent_path());
}

inline Json cell_counts(const CellComplex& x) {
  Json c = Json::array();
  for (int d = 0; d <= x.dimension(); ++d) c.push_back(s(x.count(static_cast<std::size_t>(d))));
  return Json{{"kind", to_string(x.kind())}, {"vertices", s(x.num_vertices())}, {"cells", c}};
}

inline std::string cell_name(const CellComplex& x, CellRef c) { return x.describe(c.dim, c.index); }

struct Outcome {
  Json report;
  std::string summary;
};

inline Outcome homology_cmd(const RunConfig& c) {
  const auto x = complex_from_json(read_json_file(need(c.complex, "--complex", "homology")));
  const Ring ring = ring_of(c, Ring::Z);
  Json degrees = Json::array();
  std::string summary = "homology over " + to_string(ring) + ":";
  with_ring(ring, [&]<class T>() {
    const auto h = homology<T>(x);
    for (const auto& g : h.groups) {
      Json torsion = Json::array();
      for (const auto& t : g.torsion) torsion.push_back(t.get_str());
      degrees.push_back(Json{{"degree", s(g.degree)}, {"betti", s(g.betti)}, {"torsion", torsion}});
      summary += " H" + s(g.degree) + " rank " + s(g.betti);
      for (const auto& t : g.torsion) summary += " +Z/" + t.get_str();
      summary += ";";
    }
    degrees.back()["euler_characteristic"] = std::to_string(h.euler_characteristic());
  });
  Json report{{"subcommand", "homology"}, {"ring", to_string(ring)}, {"complex", cell_counts(x)}, {"degrees", degrees}};
  report["euler_characteristic"] = degrees.back()["euler_characteristic"];
  degrees.back().erase("euler_characteristic");
  report["degrees"] = degrees;
  return {report, summary};
}

inline Outcome width_cmd(const RunConfig& c) {
  const auto f = load_map(need(c.map, "--map", "width"));
  const Ring ring = ring_of(c, Ring::Z);
  const auto rep = width_report(f, ring, c.subdivide);
  const auto& y = rep.map->target();
  Json degrees = Json::array();
  std::string summary = "width over " + to_string(ring) + ":";
  for (const auto& w : rep.degrees) {
    Json witnesses = Json::array(), ranks = Json::object(), cells = Json::object();
    for (auto v : w.witnesses) witnesses.push_back(y.vertex_name(v));
    for (std::size_t v = 0; v < w.vertex_ranks.size(); ++v) ranks[y.vertex_name(static_cast<VertexId>(v))] = s(w.vertex_ranks[v]);
    for (const auto& [cell, r] : w.closed_cell_ranks) cells[cell_name(y, cell)] = s(r);
    degrees.push_back(Json{{"degree", s(w.degree)},
                           {"width", s(w.width)},
                           {"witness", y.vertex_name(w.witness)},
                           {"witnesses", witnesses},
                           {"vertex_ranks", ranks},
                           {"closed_cell_width", s(w.closed_cell_width)},
                           {"closed_cell_witness", cell_name(y, w.closed_cell_witness)},
                           {"closed_cell_ranks", cells}});
    summary += " width_" + s(w.degree) + " = " + s(w.width) + ";";
  }
  return {Json{{"subcommand", "width"}, {"ring", to_string(ring)}, {"subdivisions", s(rep.subdivisions)},
               {"source", cell_counts(rep.map->source())}, {"target", cell_counts(y)}, {"degrees", degrees}},
          summary};
}

inline Json lattice_json(const LatticeSubgroup& l) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < l.basis.rows(); ++i) basis.push_back(to_json_vector(l.basis.row(i)));
  return Json{{"ambient_rank", s(l.ambient_rank)}, {"rank", s(l.rank)}, {"index", l.index.get_str()}, {"basis", basis}};
}

inline Outcome fill_check_cmd(const RunConfig& c) {
  const auto k = load_map(need(c.map, "--map", "fill-check"));
  const Ring ring = ring_of(c, Ring::Q);
  if (ring == Ring::GF2) pushforward_vanishing_check(k, 1, ring);  // throws the refusal
  const auto cert = h1_image_lattice(k, c.bound);
  Json comps = Json::array(), ranks = Json::array();
  for (const auto& comp : cert.components) {
    Json cj = lattice_json(comp.lattice);
    cj["component"] = s(comp.component);
    cj["first_vertex"] = k.source().vertex_name(comp.first_vertex);
    comps.push_back(cj);
    ranks.push_back(s(comp.lattice.rank));
  }
  Json vanishing = Json::array();
  bool all = true;
  for (std::size_t d = 1; d <= static_cast<std::size_t>(std::max(k.source().dimension(), 0)); ++d) {
    const auto v = pushforward_vanishing_check(k, d, ring);
    Json vc = Json::array();
    for (const auto& comp : v.components) {
      Json image = Json::array();
      for (const auto& im : comp.image) image.push_back(to_json_vector(im));
      vc.push_back(Json{{"component", s(comp.component)},
                        {"lattice_rank", s(comp.lattice_rank)},
                        {"image_rank", s(comp.image_rank)},
                        {"exterior_rank", s(comp.exterior_rank)},
                        {"contained", comp.contained},
                        {"image", image}});
    }
    all = all && v.holds();
    vanishing.push_back(Json{{"degree", s(d)}, {"holds", v.holds()}, {"components", vc}});
  }
  Json report{{"subcommand", "fill-check"}, {"ring", to_string(ring)}, {"components", comps}, {"ranks", ranks},
              {"applicable", cert.applicable()}, {"vanishing", vanishing}, {"vanishing_holds", all}};
  report["bound"] = c.bound ? Json(s(*c.bound)) : Json(nullptr);
  std::string summary = "fill-check: ranks";
  for (const auto& r : cert.ranks()) summary += " " + s(r);
  summary += c.bound ? std::string(cert.applicable() ? "; filling applies" : "; filling does not apply") + " for bound " + s(*c.bound) : "; no bound";
  summary += all ? "; vanishing holds" : "; vanishing FAILS";
  return {report, summary};
}

inline Outcome cone_cmd(const RunConfig& c) {
  const auto f = load_map(need(c.map, "--map", "cone"));
  const Ring ring = ring_of(c, Ring::GF2);
  if (ring != Ring::GF2) throw UnsupportedCoefficients("cone building is fixed to GF2 coefficients");
  const auto mode = cone_mode_from_string(c.mode);
  const auto z = canonical_cycle<Gf2>(f);
  const auto res = cone_build(z, mode);
  Json report{{"subcommand", "cone"}, {"ring", "GF2"}, {"mode", to_string(mode)},
              {"canonical_cycle", Json{{"terms", s(z.cycle.terms.size())}, {"represents_fundamental_class", represents_fundamental_class(z)},
                                       {"shift", s(z.shift())}}}};
  std::string summary;
  if (const auto* cone = std::get_if<Cone<Gf2>>(&res)) {
    report["status"] = "complete";
    report["stages"] = s(cone->stages.size());
    summary = "cone: complete with " + s(cone->stages.size()) + " stages";
  } else {
    const auto& rep = std::get<ObstructionReport<Gf2>>(res);
    report["status"] = "obstructed";
    report["stage"] = rep.stage;
    report["detail"] = rep.detail;
    report["target_cell"] = rep.target_cell ? Json(cell_name(f.target(), *rep.target_cell)) : Json(nullptr);
    report["degree"] = s(rep.degree);
    report["system"] = to_json_sparse(rep.system);
    report["rhs"] = to_json_vector(rep.rhs);
    Json cols = Json::array();
    for (auto col : rep.columns) cols.push_back(s(col));
    report["columns"] = cols;
    report["certificate"] = rep.certificate ? to_json_vector(rep.certificate->u) : Json(nullptr);
    report["certificate_verified"] = rep.verifies();
    report["fiber_rank"] = rep.fiber_rank ? Json(s(*rep.fiber_rank)) : Json(nullptr);
    report["bound"] = rep.bound ? Json(s(*rep.bound)) : Json(nullptr);
    Json partial = Json::array();
    for (const auto& st : rep.partial) partial.push_back(st.label);
    report["partial_stages"] = partial;
    summary = "cone: obstructed at " + rep.stage + (rep.verifies() ? " (certificate verified)" : " (no certificate)");
  }
  return {report, summary};
}

inline Json connectedp_json(const ConnectedpReport& r, const GradedAlgebra& target) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back(Json{{"degree", s(d.degree)}, {"monomials", s(d.monomials)}, {"nonzero", s(d.nonzero)}});
  Json out{{"n", s(r.n)}, {"p", s(r.p)}, {"q", s(r.q)}, {"rank", s(r.rank)}, {"hypothesis_holds", r.hypothesis_holds},
           {"degrees", degrees}, {"vanishes", r.vanishes()}};
  out["top_image"] = r.top_image ? element_to_json(target, *r.top_image) : Json(nullptr);
  return out;
}

inline Outcome rational_cmd(const RunConfig& c) {
  const auto j = read_json_file(need(c.map, "--map", "rational-check"));
  const auto& check = widthlab::detail::require(j, "check", "rational-check input");
  if (!check.is_string()) throw InputError("rational-check: 'check' must be a string");
  const std::string kind = check.get<std::string>();
  auto num = [&](const char* key) { return unsigned_from_json(widthlab::detail::require(j, key, "rational-check input"), key); };
  if (kind == "diophantine") {
    const auto r = diophantine_solutions(num("p"), num("n"), num("a"));
    Json sols = Json::array();
    for (const auto& [l, m] : r.solutions) sols.push_back(Json::array({s(l), s(m)}));
    return {Json{{"subcommand", "rational-check"}, {"check", kind}, {"p", s(r.p)}, {"n", s(r.n)}, {"a", s(r.a)}, {"solutions", sols},
                 {"in_range", r.in_range}, {"unique", r.unique}, {"flag", r.flag}},
            "diophantine: " + s(r.solutions.size()) + " solution(s)" + (r.flag.empty() ? "" : " (" + r.flag + ")")};
  }
  if (kind == "connectedp") {
    const auto f = morphism_from_json(widthlab::detail::require(j, "morphism", "rational-check input"));
    const auto r = connectedp_check(f, num("q"));
    Json out = connectedp_json(r, f.target());
    out["subcommand"] = "rational-check";
    out["check"] = kind;
    return {out, std::string("connectedp: ") + (r.hypothesis_holds ? (r.vanishes() ? "vanishes" : "NONZERO IMAGE") : "hypothesis unmet")};
  }
  if (kind == "factorization") {
    auto hk = std::make_shared<const GradedAlgebra>(algebra_from_json(widthlab::detail::require(j, "algebra", "rational-check input")));
    const auto images = images_from_json(*hk, widthlab::detail::require(j, "images", "rational-check input"));
    Json out{{"subcommand", "rational-check"}, {"check", kind}};
    std::string summary;
    try {
      const auto f = rational_filling_factorization(hk, images, num("p"), num("n"), num("q"));
      const auto& r = f.report;
      Json degrees = Json::array();
      for (const auto& d : r.degrees) {
        Json mons = Json::array();
        for (const auto& m : d.monomials)
          mons.push_back(Json{{"monomial", f.w->key_name(m.monomial)}, {"lambda", s(m.lambda)}, {"mu", s(m.mu)}, {"image_zero", m.image_zero}});
        degrees.push_back(Json{{"a", s(d.a)}, {"degree", s(d.degree)}, {"monomials", mons}, {"decomposition_ok", d.decomposition_ok}, {"vanishes", d.vanishes}});
      }
      out["status"] = "verified";
      out["w"] = algebra_to_json(*f.w);
      out["g"] = morphism_to_json(f.g)["images"];
      out["iota"] = morphism_to_json(f.iota)["images"];
      out["report"] = Json{{"rank", s(r.rank)}, {"surjective_below", r.surjective_below}, {"injective_at_p", r.injective_at_p},
                           {"factors", r.factors}, {"rank_preserved", r.rank_preserved}, {"degrees", degrees}, {"holds", r.holds()}};
      summary = std::string("factorization: ") + (r.holds() ? "verified" : "verification FAILED");
    } catch (const HypothesisUnmet& e) {
      out["status"] = "hypothesis unmet";
      out["reason"] = e.what();
      summary = std::string("factorization: ") + e.what();
    }
    return {out, summary};
  }
  throw InputError("rational-check: unknown check '" + kind + "' (expected diophantine, connectedp or factorization)");
}

inline void write_file(const std::filesystem::path& p, const Json& j) {
  std::ofstream o(p, std::ios::binary);
  if (!o) throw InputError("cannot write '" + p.string() + "'");
  o << j.dump(2) << "\n";
}

/// A random rank-deficient morphism Λ[x_1..x_n] → Λ[y_1..y_m] in degree p, fixed by the seed.
inline Json random_connectedp_input(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const unsigned ps[] = {3, 5, 7};
  const unsigned p = ps[rng() % 3];
  const std::size_t n = 2 + rng() % 4, m = 1 + rng() % 5, q = rng() % (n - 1), r = 1 + rng() % (n - q - 1);
  auto x = std::make_shared<const GradedAlgebra>(odd_sphere_power_model(p, n));
  auto y = std::make_shared<const GradedAlgebra>(odd_sphere_power_model(p, m, "y"));
  std::vector<std::vector<long>> b(n, std::vector<long>(r)), cm(r, std::vector<long>(m));
  for (auto& row : b)
    for (auto& v : row) v = static_cast<long>(rng() % 7) - 3;
  for (auto& row : cm)
    for (auto& v : row) v = static_cast<long>(rng() % 7) - 3;
  std::vector<AlgebraElement> images(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long a = 0;
      for (std::size_t t = 0; t < r; ++t) a += b[i][t] * cm[t][j];
      images[i] = element_add(std::move(images[i]), y->basis_element(j), Rational(a));
    }
  return Json{{"check", "connectedp"}, {"q", s(q)}, {"seed", std::to_string(seed)}, {"morphism", morphism_to_json(AlgebraMorphism(x, y, images))}};
}

inline Outcome examples_cmd(const RunConfig& c) {
  const std::filesystem::path dir = c.out ? std::filesystem::path(*c.out) : std::filesystem::path("data/gallery");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir.string() + "': " + ec.message());
  Json index = Json::object();
  auto emit = [&](const std::string& name, const std::string& what, const Json& j) {
    write_file(dir / name, j);
    index[name] = what;
  };
  emit("circle.json", "cubical circle with 3 vertices", complex_to_json(circle(3)));
  for (std::size_t n = 2; n <= 4; ++n) emit("torus" + s(n) + ".json", "cubical " + s(n) + "-torus, 3 vertices per circle", complex_to_json(torus(n)));
  emit("rp2.json", "6-vertex real projective plane", complex_to_json(rp2()));
  emit("sphere2.json", "boundary of the cube", complex_to_json(cube_sphere()));
  emit("sphere2_x_circle.json", "product of the cube sphere and a circle", complex_to_json(product_complex(cube_sphere(), circle(3))));
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}})
    emit("proj_t" + s(n) + "_t" + s(q) + ".json", "coordinate projection of tori", map_to_json(torus_projection(n, q)));
  emit("cover_t2_degree2.json", "degree-2 self cover of the 2-torus", map_to_json(map_into_torus(share(torus({6, 3})), {3, 3}, [](VertexId v) {
         const auto co = TorusModel{{6, 3}}.coordinates(v);
         return std::vector<std::size_t>{co[0] % 3, co[1]};
       })));
  emit("circle_degree2.json", "double cover of the circle", map_to_json(circle_cover(1, 0, 2)));
  emit("subtorus_t2_t3.json", "coordinate 2-torus in the 3-torus", map_to_json(subtorus_inclusion(3, {0, 1})));
  {
    auto u = share(disjoint_union({circle(3), circle(3)}));
    emit("two_circles_t2.json", "two circles on the two axes of the 2-torus", map_to_json(map_into_torus(u, {3, 3}, [](VertexId v) {
           std::vector<std::size_t> co(2, 0);
           co[v / 3] = v % 3;
           return co;
         })));
  }
  emit("sphere2_x_circle_to_circle.json", "projection of the sphere times circle onto the circle",
       map_to_json(map_into_torus(share(product_complex(cube_sphere(), circle(3))), {3}, [](VertexId v) { return std::vector<std::size_t>{v % 3}; })));
  emit("rational_diophantine.json", "diophantine check outside the uniqueness range", Json{{"check", "diophantine"}, {"p", "3"}, {"n", "3"}, {"a", "0"}});
  {
    auto x = std::make_shared<const GradedAlgebra>(odd_sphere_power_model(5, 3));
    auto y = std::make_shared<const GradedAlgebra>(odd_sphere_power_model(5, 2, "y"));
    const AlgebraElement y1 = y->basis_element(0);
    const AlgebraMorphism f(x, y, {y1, y1, element_add({}, y1, Rational(2))});
    emit("rational_connectedp.json", "rank-one morphism of exterior algebras", Json{{"check", "connectedp"}, {"q", "1"}, {"morphism", morphism_to_json(f)}});
  }
  emit("rational_connectedp_random.json", "seeded random rank-deficient morphism", random_connectedp_input(c.seed));
  {
    const auto hk = GradedAlgebra::finite({{"u", 4}, {"v", 5}}, {});
    emit("rational_factorization.json", "factorization with one degree-4 class and one degree-5 image",
         Json{{"check", "factorization"}, {"p", "5"}, {"n", "3"}, {"q", "1"}, {"algebra", algebra_to_json(hk)},
              {"images", Json::array({Json{{"v", "1"}}, Json::object(), Json{{"v", "2"}}})}});
  }
  write_file(dir / "index.json", index);
  return {Json{{"subcommand", "examples"}, {"directory", dir.generic_string()}, {"files", index}}, "examples: wrote " + s(index.size()) + " files to " + dir.generic_string()};
}

}  // namespace detail

/// Runs one subcommand; the report goes to --out (or `out`), the summary to `err`.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    detail::Outcome o;
    if (c.subcommand == "homology") {
      o = detail::homology_cmd(c);
    } else if (c.subcommand == "width") {
      o = detail::width_cmd(c);
    } else if (c.subcommand == "fill-check") {
      o = detail::fill_check_cmd(c);
    } else if (c.subcommand == "cone") {
      o = detail::cone_cmd(c);
    } else if (c.subcommand == "rational-check") {
      o = detail::rational_cmd(c);
    } else if (c.subcommand == "examples") {
      o = detail::examples_cmd(c);
      out << o.report.dump(2) << "\n";
      err << o.summary << "\n";
      return computed;
    } else {
      throw InputError("unknown subcommand '" + c.subcommand + "'");
    }
    if (c.out) {
      detail::write_file(*c.out, o.report);
    } else {
      out << o.report.dump(2) << "\n";
    }
    err << o.summary << "\n";
    return computed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return invariant_violation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return invariant_violation;
  }
}

}  // namespace widthlab::cli
