#include <gtest/gtest.h>

#include "widthlab/complexes/builders.hpp"
#include "widthlab/fillcone/cone.hpp"
#include "widthlab/fillcone/essential.hpp"
#include "widthlab/fillcone/lattice.hpp"

using namespace widthlab;

namespace {

Vector<Integer> integral_fundamental(const CellComplex& x) {
  Vector<Integer> out;
  for (const auto& c : fundamental_cycle<Rational>(x)) out.push_back(c.get_num());
  return out;
}

Vector<Integer> row(std::initializer_list<int> xs) {
  Vector<Integer> v;
  for (int x : xs) v.push_back(Integer(x));
  return v;
}

CellMap projection_to_circle(const std::vector<std::size_t>& periods, std::size_t axis) {
  const TorusModel model{periods};
  auto src = share(torus(periods));
  std::vector<VertexId> vm(src->num_vertices());
  for (std::size_t v = 0; v < vm.size(); ++v) vm[v] = static_cast<VertexId>(model.coordinates(static_cast<VertexId>(v))[axis]);
  return CellMap(src, share(circle(periods[axis])), std::move(vm));
}

CellMap degree_two_cover() {
  const TorusModel src{{6, 3}};
  return map_into_torus(share(torus({6, 3})), {3, 3}, [&](VertexId v) {
    auto c = src.coordinates(v);
    return std::vector<std::size_t>{c[0] % 3, c[1]};
  });
}

// Independent certificate check: dense uᵀB and uᵀy from the incidence lists.
bool certificate_by_definition(const CellComplex& x, const ObstructionReport<Gf2>& rep) {
  if (!rep.certificate) return false;
  const auto& u = rep.certificate->u;
  for (auto col : rep.columns) {
    Gf2 acc(0);
    for (auto [face, sign] : x.boundary(rep.degree, col)) acc = acc + u[face] * Gf2(sign);
    if (acc.value()) return false;
  }
  Gf2 uy(0);
  for (std::size_t i = 0; i < u.size(); ++i) uy = uy + u[i] * rep.rhs[i];
  return uy.value();
}

}  // namespace

TEST(TorusCocycle, IsClosedAndDualToCoordinateSubtori) {
  for (const auto& periods : {std::vector<std::size_t>{3, 3, 3}, std::vector<std::size_t>{3, 4, 5}}) {
    const auto t = torus(periods);
    const auto model = torus_model(t);
    const auto cc = chain_complex<Integer>(t);
    for (std::size_t d = 1; d <= 3; ++d)
      for (const auto& index : index_subsets(3, d)) {
        const auto phi = torus_cocycle(t, model, index);
        if (d < 3) {
          EXPECT_TRUE(is_zero_vector(cc.d(d + 1).apply_left(phi)));
        }
        EXPECT_FALSE(is_zero_vector(phi));
      }
  }
  for (std::size_t a = 1; a <= 3; ++a)
    for (const auto& axes : index_subsets(3, a)) {
      const auto inc = subtorus_inclusion(3, axes);
      const auto model = torus_model(inc.target());
      const auto cls = torus_class_coordinates(inc.target(), model, a, inc.push_chain<Integer>(a, integral_fundamental(inc.source())));
      const auto subsets = index_subsets(3, a);
      for (std::size_t p = 0; p < subsets.size(); ++p) EXPECT_EQ(abs(cls[p]), subsets[p] == axes ? 1 : 0);
    }
}

TEST(TorusModel, RejectsNonTorusTargets) {
  EXPECT_THROW(torus_model(rp2()), InputError);
  EXPECT_THROW(torus_model(cube_sphere()), InputError);
  EXPECT_NO_THROW(torus_model(circle(4)));
}

TEST(Lattice, CoordinateSubtorusSpansTwoAxes) {
  const auto cert = h1_image_lattice(subtorus_inclusion(3, {0, 1}), 3);
  ASSERT_EQ(cert.components.size(), 1u);
  const auto& l = cert.components[0].lattice;
  EXPECT_EQ(l.rank, 2u);
  EXPECT_EQ(l.index, 1);
  EXPECT_EQ(l, LatticeSubgroup::spanned_by(3, {row({1, 0, 0}), row({0, 1, 0})}));
  EXPECT_TRUE(cert.applicable());
  EXPECT_FALSE(h1_image_lattice(subtorus_inclusion(3, {0, 1}), 2).applicable());
}

TEST(Lattice, DegreeTwoCircleHasIndexTwo) {
  const auto cert = h1_image_lattice(circle_cover(1, 0, 2));
  const auto& l = cert.components.at(0).lattice;
  EXPECT_EQ(l.rank, 1u);
  EXPECT_EQ(l.index, 2);
  EXPECT_EQ(abs(l.basis(0, 0)), 2);
  EXPECT_FALSE(cert.applicable());  // no bound supplied
}

TEST(Lattice, DisjointCirclesGetOneLatticeEach) {
  auto u = share(disjoint_union({circle(3), circle(3)}));
  const auto k = map_into_torus(u, {3, 3}, [](VertexId v) {
    std::vector<std::size_t> c(2, 0);
    c[v / 3] = v % 3;
    return c;
  });
  const auto cert = h1_image_lattice(k, 2);
  EXPECT_EQ(cert.ranks(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(cert.components[0].lattice, LatticeSubgroup::spanned_by(2, {row({1, 0})}));
  EXPECT_EQ(cert.components[1].lattice, LatticeSubgroup::spanned_by(2, {row({0, 1})}));
  EXPECT_TRUE(cert.applicable());
}

TEST(Lattice, HermiteBasisIsCanonical) {
  const auto a = LatticeSubgroup::spanned_by(3, {row({2, 4, 0}), row({0, 2, 2})});
  const auto b = LatticeSubgroup::spanned_by(3, {row({2, 6, 2}), row({0, 2, 2}), row({2, 4, 0})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rank, 2u);
  EXPECT_EQ(a.index, 4);
  EXPECT_EQ(LatticeSubgroup::spanned_by(2, {}).rank, 0u);
}

TEST(Lattice, StaircaseLoopIsDiagonal) {
  for (const auto& fm : filling_family())
    if (fm.name == "staircase (1,1) in T2") {
      const auto l = h1_image_lattice(fm.map).components.at(0).lattice;
      EXPECT_EQ(l, LatticeSubgroup::spanned_by(2, {row({1, 1})}));
      return;
    }
  FAIL() << "staircase map missing from the family";
}

TEST(Vanishing, SubtorusAboveItsRankHasZeroImage) {
  const auto inc = subtorus_inclusion(3, {0, 1});
  const auto r3 = pushforward_vanishing_check(inc, 3);
  ASSERT_EQ(r3.components.size(), 1u);
  EXPECT_EQ(r3.components[0].image_rank, 0u);
  EXPECT_EQ(r3.components[0].exterior_rank, 0u);
  EXPECT_TRUE(r3.holds());
  const auto r2 = pushforward_vanishing_check(inc, 2, Ring::Z);
  EXPECT_EQ(r2.components[0].image_rank, 1u);
  EXPECT_EQ(r2.components[0].exterior_rank, 1u);
  EXPECT_EQ(abs(r2.components[0].image.at(0)[0]), 1);  // coordinate {0,1}
  EXPECT_EQ(r2.components[0].image.at(0)[1], 0);
  EXPECT_TRUE(r2.holds());
}

TEST(Vanishing, RefusesModTwoCoefficients) {
  try {
    pushforward_vanishing_check(circle_cover(1, 0, 2), 1, Ring::GF2);
    FAIL() << "GF2 accepted";
  } catch (const UnsupportedCoefficients& e) {
    EXPECT_NE(std::string(e.what()).find("cannot be filled"), std::string::npos);
  }
}

TEST(Vanishing, HoldsAcrossTheFamily) {
  const auto family = filling_family();
  EXPECT_GE(family.size(), 20u);
  for (const auto& fm : family)
    for (std::size_t d = 1; d <= static_cast<std::size_t>(fm.map.source().dimension()) + 1; ++d)
      for (auto ring : {Ring::Z, Ring::Q}) {
        const auto rep = pushforward_vanishing_check(fm.map, d, ring);
        EXPECT_TRUE(rep.holds()) << fm.name << " d=" << d;
        for (const auto& c : rep.components) {
          if (d > c.lattice_rank) {
            EXPECT_EQ(c.image_rank, 0u) << fm.name;
          }
        }
      }
}

TEST(Cone, ProjectionToCircleIsObstructed) {
  for (const auto& periods : {std::vector<std::size_t>{3, 3}, std::vector<std::size_t>{3, 3, 3}}) {
    const auto f = projection_to_circle(periods, periods.size() - 1);
    const auto z = canonical_cycle<Gf2>(f);
    const auto res = cone_build(z, ConeMode::global);
    ASSERT_FALSE(is_complete(res));
    const auto& rep = std::get<ObstructionReport<Gf2>>(res);
    EXPECT_TRUE(rep.verifies());
    EXPECT_TRUE(certificate_by_definition(f.source(), rep));
    ASSERT_TRUE(rep.target_cell.has_value());
    EXPECT_EQ(rep.target_cell->dim, 0u);
    EXPECT_EQ(rep.stage, f.target().describe(0, rep.target_cell->index));
    EXPECT_TRUE(rep.partial.empty());
  }
}

TEST(Cone, ZeroChainConesTrivially) {
  const auto z = canonical_cycle<Gf2>(projection_to_circle({3, 3}, 1));
  CycleChain<Gf2> twice = z.cycle;
  for (const auto& [id, c] : z.cycle.terms) twice.add(id, c);
  ASSERT_TRUE(twice.is_zero_chain());
  for (auto mode : {ConeMode::global, ConeMode::local}) {
    const auto res = cone_build(z, mode, twice);
    ASSERT_TRUE(is_complete(res));
    EXPECT_TRUE(std::get<Cone<Gf2>>(res).stages.empty());
    EXPECT_TRUE(std::get<Cone<Gf2>>(res).chain.is_zero_chain());
  }
}

TEST(Cone, LocalModeStopsAtTheFirstFiber) {
  const auto f = projection_to_circle({3, 3, 3}, 2);
  const auto z = canonical_cycle<Gf2>(f);
  const auto res = cone_build(z, ConeMode::local);
  ASSERT_FALSE(is_complete(res));
  const auto& rep = std::get<ObstructionReport<Gf2>>(res);
  EXPECT_TRUE(rep.verifies());
  EXPECT_TRUE(certificate_by_definition(f.source(), rep));
  ASSERT_TRUE(rep.target_cell.has_value());
  EXPECT_EQ(rep.target_cell->dim, 0u);
  EXPECT_EQ(rep.fiber_rank, 2u);
  EXPECT_EQ(rep.bound, 2u);
  // Support is the preimage of the closed star: strictly fewer columns than the global system.
  EXPECT_LT(rep.columns.size(), f.source().count(rep.degree));
}

TEST(Cone, BoundingCycleConesCompletely) {
  // A single square with cycle-space shift 1: its boundary loop is a 0-simplex and bounds.
  auto sq = share(CellComplex::from_cells(CellKind::cubical, {"a", "b", "c", "d"}, {{0, 1, 2, 3}}));
  CycleSpace<Rational> space(sq, 1);
  const auto cc = chain_complex<Rational>(*sq);
  const auto loop = cc.d(2).apply(Vector<Rational>{Rational(1)});
  const NodeId v = space.glue({}, loop, "loop");
  auto z = space.simplex_chain(v, Rational(3));
  const auto res = cone_build<Rational>(space, z);
  ASSERT_TRUE(is_complete(res));
  const auto& cone = std::get<Cone<Rational>>(res);
  ASSERT_EQ(cone.stages.size(), 1u);
  EXPECT_EQ(cone.stages[0].top, (Vector<Rational>{Rational(-1)}));
  auto bd = space.boundary(cone.chain);
  bd.terms.erase(cone.apex);
  EXPECT_EQ(space.ev(bd), vec_sub(Vector<Rational>(loop.size(), Rational(0)), space.ev(z)));
}

TEST(Essential, IdentityTorusIsEssential) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto t = share(torus(n));
    const CellMap id = CellMap::identity(t);
    for (auto ring : {Ring::Z, Ring::GF2}) {
      const auto rep = essentialness_check(id, ring);
      EXPECT_TRUE(rep.essential);
      ASSERT_EQ(rep.image_class.size(), 1u);
      EXPECT_EQ(abs(rep.image_class[0]), 1);
    }
  }
}

TEST(Essential, SphereTimesCircleToCircleIsInessential) {
  auto m = share(product_complex(cube_sphere(), circle(3)));
  const auto phi = map_into_torus(m, {3}, [](VertexId v) { return std::vector<std::size_t>{v % 3}; });
  for (auto ring : {Ring::Z, Ring::GF2}) {
    const auto rep = essentialness_check(phi, ring);
    EXPECT_FALSE(rep.essential);
    EXPECT_TRUE(rep.image_class.empty());
  }
}

TEST(Essential, DegreeTwoMapSeesOnlyIntegers) {
  const auto phi = degree_two_cover();
  const auto z = essentialness_check(phi, Ring::Z);
  EXPECT_TRUE(z.essential);
  EXPECT_EQ(abs(z.image_class.at(0)), 2);
  const auto g = essentialness_check(phi, Ring::GF2);
  EXPECT_FALSE(g.essential);
  EXPECT_EQ(g.image_class.at(0), 0);
  EXPECT_THROW(essentialness_check(phi, Ring::Q), UnsupportedCoefficients);
}

TEST(Pushforward, IdentityKeepsTheCycle) {
  const auto z = canonical_cycle<Gf2>(projection_to_circle({3, 3}, 1));
  const auto pushed = pushforward_cycle(*z.space, z.cycle, CellMap::identity(z.space->ambient_ptr()));
  EXPECT_EQ(pushed.chain.terms.size(), z.cycle.terms.size());
  EXPECT_EQ(pushed.space->ev(pushed.chain), z.space->ev(z.cycle));
  EXPECT_EQ(pushed.space->size(), z.space->closure(z.cycle).size());
}

TEST(Pushforward, DegreeTwoCoverKillsTheClassModTwo) {
  const auto phi = degree_two_cover();
  const TorusModel model{{6, 3}};
  std::vector<VertexId> vm(phi.source().num_vertices());
  for (std::size_t v = 0; v < vm.size(); ++v) vm[v] = static_cast<VertexId>(model.coordinates(static_cast<VertexId>(v))[1]);
  const auto z = canonical_cycle<Gf2>(CellMap(phi.source_ptr(), share(circle(3)), vm));
  const auto pushed = pushforward_cycle(*z.space, z.cycle, phi);
  EXPECT_TRUE(is_zero_vector(pushed.space->ev(pushed.chain)));
  EXPECT_FALSE(is_zero_vector(z.space->ev(z.cycle)));
}

TEST(Pushforward, CommutesWithEvaluation) {
  const auto f = projection_to_circle({3, 3, 3}, 2);
  const auto collapse = map_into_torus(f.source_ptr(), {3, 3}, [](VertexId v) {
    const auto c = TorusModel{{3, 3, 3}}.coordinates(v);
    return std::vector<std::size_t>{c[0], c[1]};
  });
  const auto z = canonical_cycle<Gf2>(f);
  std::vector<CellMap> maps{CellMap::identity(f.source_ptr()), collapse, subtorus_inclusion(4, {0, 1, 3})};
  for (const auto& phi : maps) {
    if (!(phi.source() == z.space->ambient())) continue;
    const auto pushed = pushforward_cycle(*z.space, z.cycle, phi);
    EXPECT_EQ(pushed.space->ev(pushed.chain), phi.push_chain<Gf2>(3, z.space->ev(z.cycle)));
  }
  // Rational cycle through a degree-2 map: the class doubles.
  const auto phi = degree_two_cover();
  const TorusModel model{{6, 3}};
  std::vector<VertexId> vm(phi.source().num_vertices());
  for (std::size_t v = 0; v < vm.size(); ++v) vm[v] = static_cast<VertexId>(model.coordinates(static_cast<VertexId>(v))[1]);
  const auto zq = canonical_cycle<Rational>(CellMap(phi.source_ptr(), share(circle(3)), vm));
  const auto pq = pushforward_cycle(*zq.space, zq.cycle, phi);
  EXPECT_EQ(pq.space->ev(pq.chain), phi.push_chain<Rational>(2, zq.space->ev(zq.cycle)));
  EXPECT_FALSE(is_zero_vector(pq.space->ev(pq.chain)));
}

TEST(Pushforward, RejectsForeignMaps) {
  const auto z = canonical_cycle<Gf2>(projection_to_circle({3, 3}, 1));
  EXPECT_THROW(pushforward_cycle(*z.space, z.cycle, subtorus_inclusion(3, {0})), InputError);
}
