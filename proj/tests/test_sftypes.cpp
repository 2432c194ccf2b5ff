#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace sfom;
using fx::pa;
using fx::poly;

namespace {

const Int N35 = 35;

SFType ex1_leaf() {
  auto so = sfom::sfom(fx::ex1(N35), N35);
  REQUIRE(so.ok());
  REQUIRE(so.rep->leaves.size() == 1);
  return so.rep->leaves[0];
}

// Truncation to order k, with the level k+1 representative as pending g.
SFType truncated(const SFType& ty, int k) {
  SFType t;
  t.tower = ty.tower.truncate(k + 1);
  t.lv.assign(ty.lv.begin(), ty.lv.begin() + k + 1);
  if (k + 1 <= ty.order()) {
    t.g_next = ty.lv[k + 1].g;
    t.V_next = ty.lv[k + 1].V;
  } else {
    t.g_next = ty.g_next;
    t.V_next = ty.V_next;
  }
  return t;
}

SFType root_type(const Int& N, std::initializer_list<long> t0) {
  SFType t;
  Tower A(N);
  t.tower = A.extend(fx::pa(A, t0));
  t.lv.resize(1);
  t.g_next = representative(t);
  t.V_next = 0;
  return t;
}

// z^nu R(z) for the level L-1 data of a, as an element of A_L.
Elem residue_of(const SFType& ty, int L, const IntPoly& a, Val* v) {
  Analyzer an(ty);
  const LevelInfo& I = an.info(L - 1, a);
  *v = I.v;
  Elem c = ty.tower.embed(I.R);
  return L - 1 >= 1 ? ty.tower.mul(c, ty.tower.zpow(L, I.nu)) : c;
}

}  // namespace

TEST_CASE("order-zero helpers") {
  Tower A(N35);
  CHECK(lift_order_zero(A, pa(A, {0, 1})) == poly({0, 1}));
  CHECK(lift_order_zero(A, pa(A, {1, 1})) == poly({1, 1}));
  CHECK(lift_order_zero(A, pa(A, {1, 0, 1})) == poly({1, 0, 1}));
  CHECK(r0(A, poly({1225})) == std::pair<Val, PolyA>(2, pa(A, {1})));
  CHECK(r0(A, poly({0, 0, 70})) == std::pair<Val, PolyA>(1, pa(A, {0, 0, 2})));
  CHECK(r0(A, fx::ex1(N35)) == std::pair<Val, PolyA>(0, pa(A, {0, 0, 0, 0, 1})));
}

TEST_CASE("g-adic expansion") {
  IntPoly f = fx::ex1(N35), g = poly({35, 0, 1});
  Expansion ex = expand(f, g);
  REQUIRE(ex.coeffs.size() == 3);
  CHECK(ex.coeffs[0] == poly({0, 34L * 35 * 35 * 35}));
  CHECK(ex.coeffs[1].is_zero());
  CHECK(ex.coeffs[2] == poly({1}));
  CHECK(ex.quotients[1] == g);
  CHECK(ex.quotients[2] == poly({1}));
  Expansion byx = expand(f, poly({0, 1}));
  for (int i = 0; i <= 4; ++i) CHECK(byx.coeffs[i] == IntPoly::constant(f.coeff(i)));
  Expansion cube = expand(g.pow(3), g);
  CHECK(cube.coeffs[0].is_zero());
  CHECK(cube.coeffs[2].is_zero());
  CHECK(cube.coeffs[3] == poly({1}));
  // Reconstruction.
  IntPoly h = poly({3, -1, 4, 1, -5, 9, 2, 6, 1});
  Expansion eh = expand(h, poly({2, 1, 1}));
  IntPoly back;
  for (size_t s = eh.coeffs.size(); s-- > 0;) back = back * poly({2, 1, 1}) + eh.coeffs[s];
  CHECK(back == h);
}

TEST_CASE("Newton polygons") {
  NewtonPolygon np({{0, 5}, {1, 2}, {2, 3}, {3, 0}, {4, 1}});
  CHECK(np.principal_vertices() == std::vector<Vertex>{{0, 5}, {1, 2}, {3, 0}});
  auto sides = np.principal_sides();
  REQUIRE(sides.size() == 2);
  CHECK(sides[0].h == 3);
  CHECK(sides[0].e == 1);
  CHECK(sides[1].h == 1);
  CHECK(sides[1].e == 1);
  auto [l, r] = np.component(1, 1);
  CHECK(l == Vertex{1, 2});
  CHECK(r == Vertex{3, 0});
  // A vertex component for a slope not on the polygon.
  auto [l2, r2] = np.component(2, 1);
  CHECK(l2 == Vertex{1, 2});
  CHECK(r2 == Vertex{1, 2});
  CHECK(polygon_dump(NewtonPolygon({{0, 2}, {2, 1}, {4, 0}})) == "0 2\n4 0\nside 1/2 0 4\n");
}

TEST_CASE("valuations of the quartic over 35") {
  SFType leaf = ex1_leaf();
  SFType t1 = truncated(leaf, 1);
  CHECK(vr(t1, poly({0, 1})) == 1);
  CHECK(vr(t1, poly({35})) == 2);
  CHECK(vr(leaf, poly({35, 0, 1})) == 7);
  CHECK(nu(t1, 1, poly({0, 34L * 35 * 35 * 35})) == -3);
  CHECK(nu(t1, 1, poly({1})) == 0);
  CHECK(nu(leaf, 2, poly({1})) == 0);
}

TEST_CASE("Newton step and residuals") {
  IntPoly f = fx::ex1(N35);
  SFType root = root_type(N35, {0, 1});
  CHECK(root.g_next == poly({0, 1}));
  NewtonResult n0 = newton(root, 4, f);
  CHECK(n0.polygon.principal_vertices() == std::vector<Vertex>{{0, 2}, {4, 0}});
  CHECK(polygon_dump(n0.polygon) == "0 2\n4 0\nside 1/2 0 4\n");
  PolyA R1 = residual(root, n0, 1, 2);
  CHECK(R1 == root.tower.pfrom_ints(1, {1, 2, 1}));

  SFType t1 = truncated(ex1_leaf(), 1);
  CHECK(t1.g_next == poly({35, 0, 1}));
  NewtonResult n1 = newton(t1, 2, f);
  CHECK(n1.polygon.principal_vertices() == std::vector<Vertex>{{0, 7}, {2, 4}});
  PolyA R2 = residual(t1, n1, 3, 2);
  REQUIRE(R2.deg() == 1);
  CHECK(t1.tower.is_one(R2.c[1]));
  CHECK(t1.tower.is_one(R2.c[0]));

  // f = g^k has a single point and no principal side.
  NewtonResult nk = newton(root, 3, poly({0, 0, 0, 1}));
  CHECK(nk.polygon.principal_sides().empty());
  CHECK(nk.polygon.principal_vertices() == std::vector<Vertex>{{3, 0}});
  PolyA Rk = residual(root, nk, 1, 2);
  REQUIRE(Rk.deg() == 0);
  CHECK(root.tower.is_one(Rk.c[0]));
}

TEST_CASE("ord of f along a type") {
  IntPoly f = fx::ex1(N35);
  CHECK(ord_ty(root_type(N35, {0, 1}), f) == 4);
  CHECK(ord_ty(ex1_leaf(), f) == 1);
  CHECK(ord_ty(root_type(N35, {1, 1}), f) == 0);
}

TEST_CASE("representatives") {
  SFType t1 = truncated(ex1_leaf(), 1);
  CHECK(representative(t1) == poly({35, 0, 1}));
  CHECK(representative(root_type(N35, {1, 1})) == poly({1, 1}));
}

TEST_CASE("construction with prescribed residue") {
  SFType root = root_type(N35, {0, 1});
  const Tower& A = root.tower;
  CHECK(construct_with_residue(root, 1, 2, A.one(1)) == poly({1225}));
  CHECK(construct_with_residue(root, 1, 0, A.from_int(1, 2)) == poly({2}));

  SFType t1 = truncated(ex1_leaf(), 1);
  Elem minus_one = t1.tower.from_int(2, -1);
  for (Val v = 2; v <= 9; ++v) {
    IntPoly a = construct_with_residue(t1, 2, v, minus_one);
    CHECK(a.deg() < 2);
    Val got = 0;
    CHECK(residue_of(t1, 2, a, &got) == minus_one);
    CHECK(got == v);
  }
}

TEST_CASE("representatives reproduce their own type on random towers") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const long N : {35L, 77L, 143L, 1517L}) {
    for (int trial = 0; trial < 10; ++trial) {
      Tower A(N);
      long c0 = 1 + static_cast<long>(rng() % (N - 1));
      if (gcd(Int(c0), Int(N)) != 1) continue;
      SFType ty;
      ty.tower = A.extend(pa(A, {c0, 1}));
      ty.lv.resize(2);
      TypeLevel& L = ty.lv[1];
      L.g = poly({-c0 + N, 1});
      L.e = 1 + static_cast<Val>(rng() % 3);
      L.h = 1 + static_cast<Val>(rng() % 4);
      if (std::gcd(L.h, L.e) != 1) continue;
      bezout_data(L.h, L.e, L.ell, L.ellp);
      L.V = 0;
      Tower B = ty.tower;
      long a = 1 + static_cast<long>(rng() % (N - 1));
      if (gcd(Int(a), Int(N)) != 1) continue;
      ty.tower = B.extend(PolyA{1, {B.from_int(1, a), B.one(1)}});
      IntPoly g = representative(ty);
      CHECK(g.deg() == L.e * ty.f(1));
      ++checked;
    }
  }
  CHECK(checked > 10);
}
