#include <gtest/gtest.h>

#include <random>

#include "widthlab/complexes/builders.hpp"
#include "widthlab/cyclespace/canonical_cycle.hpp"

using namespace widthlab;

namespace {

template <class T>
Vector<T> unit(std::size_t n, std::size_t i, T c = T(1)) {
  Vector<T> v(n, T(0));
  v[i] = c;
  return v;
}

// Oracle: dense boundary from the complex's incidence lists.
template <class T>
Matrix<T> dense_boundary(const CellComplex& x, std::size_t d) {
  Matrix<T> m(d == 0 ? 0 : x.count(d - 1), x.count(d));
  if (d == 0) return m;
  for (std::size_t j = 0; j < x.count(d); ++j)
    for (auto [face, sign] : x.boundary(d, j)) m(face, j) = m(face, j) + convert<T>(Integer(sign));
  return m;
}

}  // namespace

TEST(Glue, OneSimplexFromHomologousCycles) {
  auto x = share(circle(3));
  CycleSpace<Integer> space(x, 0);
  const auto& bd = x->boundary(1, 0);
  std::size_t head = 0, tail = 0;
  for (auto [face, sign] : bd) (sign > 0 ? head : tail) = face;
  const auto a = space.glue({}, unit<Integer>(3, head));
  const auto b = space.glue({}, unit<Integer>(3, tail));
  const auto e = space.glue({a, b}, unit<Integer>(3, 0));
  EXPECT_EQ(space.node(e).dim, 1u);
  const auto boundary = space.boundary(space.simplex_chain(e));
  EXPECT_EQ(space.ev(boundary), vec_sub(unit<Integer>(3, head), unit<Integer>(3, tail)));
  EXPECT_EQ(space.ev(space.simplex_chain(a)), unit<Integer>(3, head));
}

TEST(Glue, RejectsBoundaryMismatchWithResidual) {
  auto x = share(circle(3));
  CycleSpace<Integer> space(x, 0);
  const auto a = space.glue({}, unit<Integer>(3, 0));
  const auto b = space.glue({}, unit<Integer>(3, 1));
  try {
    space.glue({a, b}, Vector<Integer>(3, Integer(0)));
    FAIL() << "expected a gluing error";
  } catch (const GluingError& e) {
    EXPECT_EQ(e.index(), -1);
    EXPECT_FALSE(e.residual().empty());
  }
  // A 0-simplex top must be a cycle when the shift is positive.
  CycleSpace<Integer> shifted(x, 1);
  EXPECT_THROW(shifted.glue({}, unit<Integer>(3, 0)), GluingError);
}

TEST(Glue, RejectsIncompatibleFaces) {
  auto x = share(torus(2));
  CycleSpace<Gf2> space(x, 0);
  const std::size_t nv = x->count(0);
  std::vector<NodeId> v;
  for (std::size_t i = 0; i < 3; ++i) v.push_back(space.glue({}, unit<Gf2>(nv, i)));
  const Vector<Gf2> zero1(x->count(1), Gf2(0));
  // Tops chosen with ∂ = sum of endpoints; build (v1,v0), (v2,v0), (v2,v1) style edges via boundaries of paths.
  auto edge_between = [&](std::size_t p, std::size_t q) {
    // Any 1-chain with boundary p + q over GF(2): a path in the 1-skeleton.
    const auto bd = dense_boundary<Gf2>(*x, 1);
    auto r = solve_linear(SparseMatrix<Gf2>::from_dense(bd), vec_add(unit<Gf2>(nv, p), unit<Gf2>(nv, q)));
    return std::get<Vector<Gf2>>(r);
  };
  const auto e01 = space.glue({v[1], v[0]}, edge_between(0, 1));
  const auto e02 = space.glue({v[2], v[0]}, edge_between(0, 2));
  const auto e12 = space.glue({v[2], v[1]}, edge_between(1, 2));
  // Correct order is (e12, e02, e01); swapping breaks ∂_i φ_j = ∂_{j-1} φ_i.
  const auto sum = vec_add(vec_add(edge_between(1, 2), edge_between(0, 2)), edge_between(0, 1));
  auto r = solve_linear(SparseMatrix<Gf2>::from_dense(dense_boundary<Gf2>(*x, 2)), sum);
  if (is_solution(r)) {
    EXPECT_NO_THROW(space.glue({e12, e02, e01}, std::get<Vector<Gf2>>(r)));
  }
  try {
    space.glue({e01, e02, e12}, Vector<Gf2>(x->count(2), Gf2(0)));
    FAIL() << "expected a compatibility error";
  } catch (const GluingError& e) {
    EXPECT_GE(e.index(), 1);
    EXPECT_EQ(e.residual(), "");
  }
  EXPECT_THROW(space.glue({v[0], e01}, zero1), GluingError);
}

TEST(Glue, InjectiveInItsData) {
  auto x = share(circle(4));
  CycleSpace<Rational> space(x, 0);
  const auto a = space.glue({}, unit<Rational>(4, 0));
  EXPECT_EQ(space.glue({}, unit<Rational>(4, 0)), a);
  EXPECT_NE(space.glue({}, unit<Rational>(4, 1)), a);
  const auto s = space.degeneracy(0, a);
  EXPECT_EQ(space.degeneracy(0, a), s);
  EXPECT_EQ(space.node(s).faces, (std::vector<NodeId>{a, a}));
  EXPECT_TRUE(space.is_degenerate(s));
  EXPECT_FALSE(space.is_degenerate(a));
  const auto ss = space.degeneracy(1, s);
  EXPECT_TRUE(space.is_degenerate(ss));
  // Normalized chains: ∂ of s_1 s_0 a drops the degenerate faces, leaving s_0 a - s_0 a + ... = 0.
  EXPECT_TRUE(space.boundary(space.simplex_chain(ss)).is_zero_chain());
}

namespace {

// A random k-simplex of the cycle space given as a chain map C(Δ[k]) -> D[s]:
// x = const_z + ∂u + u∂ with z a random s-cycle and u random of degree +1.
template <class T>
NodeId random_simplex(CycleSpace<T>& space, std::size_t k, std::mt19937& rng, const std::vector<Vector<T>>& cycles) {
  const auto& x = space.ambient();
  const std::size_t s = space.shift();
  std::uniform_int_distribution<int> coeff(-2, 2);
  auto rand_chain = [&](std::size_t deg) {
    Vector<T> v(x.count(deg), T(0));
    for (auto& c : v)
      if (rng() % 3 == 0) c = convert<T>(Integer(coeff(rng)));
    return v;
  };
  const std::size_t subsets = std::size_t{1} << (k + 1);
  std::vector<Vector<T>> u(subsets), val(subsets);
  for (std::size_t m = 1; m < subsets; ++m) u[m] = rand_chain(s + std::popcount(m));
  Vector<T> z = cycles.empty() ? Vector<T>(x.count(s), T(0)) : cycles[rng() % cycles.size()];
  if (s + 1 <= static_cast<std::size_t>(x.dimension())) z = vec_add(z, space.boundary_of(s + 1, rand_chain(s + 1)));
  std::vector<NodeId> node(subsets);
  for (std::size_t m = 1; m < subsets; ++m) {
    const std::size_t dim = std::popcount(m) - 1;
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b <= k; ++b)
      if (m >> b & 1) members.push_back(b);
    Vector<T> v = space.boundary_of(s + dim + 1, u[m]);
    if (v.empty()) v.assign(x.count(s + dim), T(0));
    if (dim == 0) v = vec_add(v, z);
    std::vector<NodeId> faces;
    for (std::size_t i = 0; i < members.size() && dim > 0; ++i) {
      const std::size_t fm = m & ~(std::size_t{1} << members[i]);
      add_scaled(v, i % 2 ? T(-1) : T(1), u[fm]);
      faces.push_back(node[fm]);
    }
    val[m] = v;
    node[m] = space.glue(faces, v);
  }
  return node[subsets - 1];
}

template <class T>
void ev_law_trials(std::size_t trials, std::uint32_t seed) {
  std::mt19937 rng(seed);
  const std::vector<CellComplex> zoo{circle(3), torus(2), simplicial_circle(4), rp2(), cube_sphere(), product_complex(circle(3), circle(4))};
  std::size_t checked = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = share(zoo[t % zoo.size()]);
    const auto dim = static_cast<std::size_t>(x->dimension());
    const std::size_t s = rng() % dim;
    CycleSpace<T> space(x, s);
    auto h = homology<T>(*x);
    std::vector<Vector<T>> cycles;
    if (s < h.groups.size())
      for (const auto& g : h.groups[s].free_generators) cycles.push_back(g);
    const std::size_t k = 1 + rng() % (dim - s);
    CycleChain<T> c;
    c.dim = static_cast<std::ptrdiff_t>(k);
    for (int term = 0; term < 3; ++term) {
      NodeId id = random_simplex(space, k, rng, cycles);
      if (term == 2 && k >= 1) id = space.degeneracy(rng() % k, random_simplex(space, k - 1, rng, cycles));
      c.add(id, convert<T>(Integer(1 + static_cast<int>(rng() % 3))));
    }
    const auto lhs = space.ev(space.boundary(c));
    const auto rhs = space.boundary_of(s + k, space.ev(c));
    ASSERT_EQ(lhs, rhs) << "trial " << t;
    checked += !is_zero_vector(lhs);
  }
  // The law must be exercised on nonzero boundaries, not vacuously.
  EXPECT_GT(checked, trials / 2);
}

}  // namespace

TEST(EvLaw, RandomGluedChainsOverZ) { ev_law_trials<Integer>(100, 11); }
TEST(EvLaw, RandomGluedChainsOverGf2) { ev_law_trials<Gf2>(100, 12); }
TEST(EvLaw, RandomGluedChainsOverQ) { ev_law_trials<Rational>(50, 13); }

TEST(CanonicalCycle, T2ToCircleGf2) {
  const auto f = torus_projection(2, 1);
  const auto z = canonical_cycle<Gf2>(f);
  EXPECT_EQ(z.shift(), 1u);
  EXPECT_EQ(z.cycle.terms.size(), 3u);
  EXPECT_TRUE(z.space->boundary(z.cycle).is_zero_chain());
  const auto ev = z.space->ev(z.cycle);
  ASSERT_EQ(ev.size(), 9u);
  for (const auto& c : ev) EXPECT_EQ(c, Gf2(1));
  // Oracle: ev Z is a nonzero cycle of the dense ∂_2, and M has no 3-cells.
  const auto d2 = dense_boundary<Gf2>(f.source(), 2);
  EXPECT_TRUE(is_zero_vector(d2.apply(ev)));
  EXPECT_TRUE(represents_fundamental_class(z));
  // Vertex simplices have circle tops (3 edges over the vertex).
  for (auto id : z.simplex[0]) {
    std::size_t support = 0;
    for (const auto& c : z.space->node(id).top) support += c == Gf2(1);
    EXPECT_EQ(support, 3u);
  }
}

TEST(CanonicalCycle, T3ToCircleGf2) {
  const auto f = torus_projection(3, 1);
  const auto z = canonical_cycle<Gf2>(f);
  EXPECT_EQ(z.shift(), 2u);
  EXPECT_TRUE(z.space->boundary(z.cycle).is_zero_chain());
  const auto ev = z.space->ev(z.cycle);
  ASSERT_EQ(ev.size(), 27u);
  for (const auto& c : ev) EXPECT_EQ(c, Gf2(1));
  EXPECT_TRUE(is_zero_vector(dense_boundary<Gf2>(f.source(), 3).apply(ev)));
}

TEST(CanonicalCycle, RationalCoefficientsMatchFundamentalCycle) {
  for (const auto& f : {torus_projection(2, 1), torus_projection(3, 1)}) {
    const auto z = canonical_cycle<Rational>(f);
    const auto ev = z.space->ev(z.cycle);
    EXPECT_EQ(ev, z.fundamental);
    for (const auto& c : ev) EXPECT_TRUE(c == Rational(1) || c == Rational(-1));
    EXPECT_TRUE(is_zero_vector(dense_boundary<Rational>(f.source(), f.source().dimension()).apply(ev)));
  }
}

TEST(CanonicalCycle, IdentityCircleHasVertexZeroSimplices) {
  const auto f = CellMap::identity(share(circle(5)));
  const auto z = canonical_cycle<Rational>(f);
  EXPECT_EQ(z.shift(), 0u);
  for (auto id : z.simplex[0]) {
    const auto& n = z.space->node(id);
    EXPECT_EQ(n.dim, 0u);
    std::size_t support = 0;
    for (const auto& c : n.top) support += !is_zero(c);
    EXPECT_EQ(support, 1u);
  }
  EXPECT_EQ(z.space->ev(z.cycle), z.fundamental);
}

TEST(CanonicalCycle, SimplicialTargetOfDimensionTwo) {
  const auto f = CellMap::identity(share(rp2()));
  const auto z = canonical_cycle<Gf2>(f);
  EXPECT_EQ(z.cycle.terms.size(), 10u);
  EXPECT_TRUE(z.space->boundary(z.cycle).is_zero_chain());
  EXPECT_TRUE(represents_fundamental_class(z));
  EXPECT_THROW(canonical_cycle<Rational>(f), OrientationError);
}

TEST(CanonicalCycle, DegreeTwoCoverAndSubdividedTarget) {
  auto x = share(circle(6));
  auto y = share(circle(3));
  const CellMap cover(x, y, {0, 1, 2, 0, 1, 2});
  const auto z = canonical_cycle<Gf2>(cover);
  EXPECT_TRUE(represents_fundamental_class(z));
  // On the vertex fibers the tops are the two preimage points.
  for (auto id : z.simplex[0]) {
    std::size_t support = 0;
    for (const auto& c : z.space->node(id).top) support += c == Gf2(1);
    EXPECT_EQ(support, 2u);
  }
  const auto p = torus_projection(2, 1);
  const auto fine = subdivide_map(p, subdivide(p.source()), subdivide(p.target()));
  const auto zf = canonical_cycle<Gf2>(fine);
  EXPECT_EQ(zf.cycle.terms.size(), 6u);
  EXPECT_TRUE(represents_fundamental_class(zf));
}

TEST(CanonicalCycle, FiberednessViolationNamesTheCell) {
  // Columns 0 and 1 both collapse onto target vertex 0: a 2-dimensional vertex fiber.
  auto x = share(torus(2));
  auto y = share(circle(3));
  std::vector<VertexId> vm(9);
  const VertexId g[3] = {0, 0, 1};
  for (VertexId v = 0; v < 9; ++v) vm[v] = g[v / 3];
  const CellMap f(x, y, vm);
  try {
    canonical_cycle<Gf2>(f);
    FAIL() << "expected a fiberedness error";
  } catch (const FiberednessError& e) {
    EXPECT_EQ(e.cell(), y->describe(0, 0));
  }
}

TEST(CanonicalCycle, RejectsUnsupportedTargetsAndOpenSources) {
  EXPECT_THROW(canonical_cycle<Gf2>(torus_projection(3, 2)), InputError);
  // An arc has no fundamental class.
  auto arc = share(CellComplex::from_cells(CellKind::cubical, {"a", "b", "c"}, {{0, 1}, {1, 2}}));
  const CellMap incl(arc, share(circle(3)), {0, 1, 2});
  EXPECT_THROW(canonical_cycle<Gf2>(incl), OrientationError);
}

TEST(CanonicalCycle, JsonListsFaceDag) {
  const auto z = canonical_cycle<Gf2>(torus_projection(2, 1));
  const auto j = z.space->to_json(z.cycle);
  EXPECT_EQ(j["simplices"].size(), 6u);
  EXPECT_EQ(j["chain"].size(), 3u);
  EXPECT_EQ(j["shift"], "1");
  for (const auto& s : j["simplices"]) {
    if (s["dim"] == "1") {
      EXPECT_EQ(s["faces"].size(), 2u);
    }
  }
}
