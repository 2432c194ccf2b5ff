#pragma once

#include <map>
#include <string>
#include <vector>

#include "artinalg.hpp"
#include "intarith.hpp"

namespace sfom {

struct Vertex {
  Val s = 0, u = 0;
  bool operator==(const Vertex& o) const { return s == o.s && u == o.u; }
};

// Side of slope -h/e from (s0, u0) to (s1, u1).
struct Side {
  Val h = 0, e = 1;
  Val s0 = 0, u0 = 0, s1 = 0, u1 = 0;
};

class NewtonPolygon {
public:
  NewtonPolygon() = default;
  explicit NewtonPolygon(std::vector<Vertex> cloud);

  const std::vector<Vertex>& cloud() const { return cloud_; }
  // Lower convex hull.
  const std::vector<Vertex>& hull() const { return hull_; }
  // Vertices of the principal part (up to the leftmost point of minimal ordinate).
  std::vector<Vertex> principal_vertices() const;
  std::vector<Side> principal_sides() const;
  Val length() const { return hull_.empty() ? 0 : hull_.back().s; }
  // Left and right endpoints of the component touched by a line of slope -h/e.
  std::pair<Vertex, Vertex> component(Val h, Val e) const;

private:
  std::vector<Vertex> cloud_;
  std::vector<Vertex> hull_;
};

// Canonical g-expansion f = sum a_s g^s with the quotients q_s (q_0 = f).
struct Expansion {
  IntPoly base;
  std::vector<IntPoly> coeffs;
  std::vector<IntPoly> quotients;
};
// bound < 0 expands fully; otherwise computes a_0..a_bound.
Expansion expand(const IntPoly& f, const IntPoly& g, int bound = -1);

IntPoly lift_order_zero(const Tower& A, const PolyA& t);
PolyA reduce_mod_n(const Tower& A, const IntPoly& a);
// (ord_N(a), R_0(a)).
std::pair<Val, PolyA> r0(const Tower& A, const IntPoly& a);

struct TypeLevel {
  IntPoly g;                // g_i, i >= 1
  Val h = 0, e = 1;         // lambda_i = h/e
  Val V = 0;                // V_i = v_{i-1}(g_i)
  Val ell = 0, ellp = 1;    // ell*h + ellp*e = 1, 0 <= ell < e
  // History of f at this level.
  NewtonPolygon polygon;
  Vertex left, right;       // endpoints of the lambda_i-component
  PolyA residual;           // R_i(f) over A_i
  int omega = 0;            // ord_{t_i} R_i(f)
};

// Type of order r = lv.size() - 1 with moduli t_0..t_r in the tower.
struct SFType {
  Tower tower;
  std::vector<TypeLevel> lv;
  IntPoly g_next;   // pending representative g_{r+1}
  Val V_next = 0;   // V_{r+1}
  int omega = 0;    // ord_t(f) bound for the next polygon

  int order() const { return static_cast<int>(lv.size()) - 1; }
  int f(int i) const { return tower.f(i); }
  Val m(int i) const { return i == 0 ? 1 : lv[i].g.deg(); }
  const PolyA& t(int i) const { return tower.modulus(i); }
  Rational lambda(int i) const { return ratio(lv[i].h, lv[i].e); }
  // Level data through level k agree (moduli t_0..t_k and g, lambda up to k).
  bool same_truncation(const SFType& o, int k) const;
};

void bezout_data(Val h, Val e, Val& ell, Val& ellp);
Val next_V(const SFType& ty);

struct CloudPoint {
  Val s = 0, u = 0;
  Elem c;  // residual coefficient candidate in A_L
};

// Per-level data of one polynomial with respect to a type.
struct LevelInfo {
  Val v = 0;      // v_L(a)
  Vertex left;    // left endpoint of S_L(a)
  PolyA R;        // R_L(a) over A_L
  Val nu = 0;     // nu_L(a)
};

// Memoized valuations, polygons and residual data for a fixed type.
class Analyzer {
public:
  explicit Analyzer(const SFType& ty) : ty_(ty) {}

  const SFType& type() const { return ty_; }
  // v_L(a) without robustness requirements (g_L robust by construction).
  Val value(int L, const IntPoly& a);
  // Full certified data of a at level L; raises FactorEvent if a is not robust.
  const LevelInfo& info(int L, const IntPoly& a);
  // Certified cloud of f with respect to (g, V) over level L-1 data, s <= bound.
  std::vector<CloudPoint> cloud(int L, const IntPoly& g, Val V, const IntPoly& f, int bound = -1);

private:
  const SFType& ty_;
  std::vector<std::map<IntPoly, LevelInfo>> info_cache_;
  std::vector<std::map<IntPoly, Val>> value_cache_;
};

NewtonPolygon polygon_of(const std::vector<CloudPoint>& cloud);
// Residual polynomial over A_L of the slope -h/e component of the cloud.
PolyA residual(const Tower& A, int L, const std::vector<CloudPoint>& cloud, Val h, Val e);

Val vr(const SFType& ty, const IntPoly& f);
Val nu(const SFType& ty, int i, const IntPoly& a);
int ord_ty(const SFType& ty, const IntPoly& f);

struct NewtonResult {
  NewtonPolygon polygon;
  std::vector<CloudPoint> cloud;
};
// Polygon of f with respect to the pending representative, abscissas <= ell.
NewtonResult newton(const SFType& ty, int ell, const IntPoly& f);
PolyA residual(const SFType& ty, const NewtonResult& nr, Val h, Val e);

IntPoly construct_with_residue(const SFType& ty, int L, Val v, const Elem& alpha);
IntPoly representative(const SFType& ty);

std::string polygon_dump(const NewtonPolygon& np);
std::string polygon_svg(const NewtonPolygon& np);

}  // namespace sfom
