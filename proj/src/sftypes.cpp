#include "sftypes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sfom {

namespace {

__int128 cross(const Vertex& a, const Vertex& b, const Vertex& p) {
  return static_cast<__int128>(b.s - a.s) * (p.u - a.u) - static_cast<__int128>(b.u - a.u) * (p.s - a.s);
}

Val floor_mod(Val a, Val m) {
  Val r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

NewtonPolygon::NewtonPolygon(std::vector<Vertex> cloud) : cloud_(std::move(cloud)) {
  std::sort(cloud_.begin(), cloud_.end(), [](const Vertex& a, const Vertex& b) { return a.s < b.s; });
  for (const auto& p : cloud_) {
    while (hull_.size() >= 2 && cross(hull_[hull_.size() - 2], hull_.back(), p) <= 0) hull_.pop_back();
    hull_.push_back(p);
  }
}

std::vector<Vertex> NewtonPolygon::principal_vertices() const {
  std::vector<Vertex> out;
  for (const auto& v : hull_) {
    if (!out.empty() && v.u >= out.back().u) break;
    out.push_back(v);
  }
  return out;
}

std::vector<Side> NewtonPolygon::principal_sides() const {
  auto pv = principal_vertices();
  std::vector<Side> out;
  for (size_t i = 0; i + 1 < pv.size(); ++i) {
    Val ds = pv[i + 1].s - pv[i].s, du = pv[i].u - pv[i + 1].u;
    Val g = std::gcd(ds, du);
    out.push_back(Side{du / g, ds / g, pv[i].s, pv[i].u, pv[i + 1].s, pv[i + 1].u});
  }
  return out;
}

std::pair<Vertex, Vertex> NewtonPolygon::component(Val h, Val e) const {
  if (hull_.empty()) throw std::logic_error("component of an empty polygon");
  __int128 best = 0;
  Vertex left{}, right{};
  bool first = true;
  for (const auto& v : hull_) {
    __int128 y = static_cast<__int128>(e) * v.u + static_cast<__int128>(h) * v.s;
    if (first || y < best) {
      best = y;
      left = right = v;
      first = false;
    } else if (y == best) {
      right = v;
    }
  }
  return {left, right};
}

Expansion expand(const IntPoly& f, const IntPoly& g, int bound) {
  if (!g.is_monic() || g.deg() < 1) throw std::invalid_argument("expand: base must be monic of positive degree");
  Expansion ex;
  ex.base = g;
  IntPoly q = f;
  for (int s = 0; !q.is_zero() && (bound < 0 || s <= bound); ++s) {
    auto [qq, r] = divrem_monic(q, g);
    ex.quotients.push_back(q);
    ex.coeffs.push_back(std::move(r));
    q = std::move(qq);
  }
  return ex;
}

IntPoly lift_order_zero(const Tower&, const PolyA& t) {
  std::vector<Int> c;
  for (const auto& x : t.c) c.push_back(x.c[0]);
  return IntPoly(std::move(c));
}

PolyA reduce_mod_n(const Tower& A, const IntPoly& a) { return A.pfrom_ints(0, a.coeffs()); }

std::pair<Val, PolyA> r0(const Tower& A, const IntPoly& a) {
  if (a.is_zero()) throw std::invalid_argument("r0: zero polynomial");
  Val v = ord_n(a, A.N());
  return {v, reduce_mod_n(A, a.div_exact(ipow(A.N(), static_cast<unsigned long>(v))))};
}

bool SFType::same_truncation(const SFType& o, int k) const {
  if (order() < k || o.order() < k) return false;
  if (!tower.same_prefix(o.tower, k + 1)) return false;
  for (int i = 1; i <= k; ++i)
    if (lv[i].g != o.lv[i].g || lv[i].h != o.lv[i].h || lv[i].e != o.lv[i].e) return false;
  return true;
}

void bezout_data(Val h, Val e, Val& ell, Val& ellp) {
  if (e == 1) {
    ell = 0;
    ellp = 1;
    return;
  }
  Int inv;
  Int hh(static_cast<long>(floor_mod(h, e))), ee(static_cast<long>(e));
  if (!mpz_invert(inv.get_mpz_t(), hh.get_mpz_t(), ee.get_mpz_t())) throw std::invalid_argument("bezout_data: h, e not coprime");
  ell = inv.get_si();
  ellp = (1 - ell * h) / e;
}

Val next_V(const SFType& ty) {
  int r = ty.order();
  const auto& L = ty.lv[r];
  return L.e * ty.f(r) * (L.e * L.V + L.h);
}

Val Analyzer::value(int L, const IntPoly& a) {
  if (a.is_zero()) throw std::invalid_argument("value of zero");
  if (L == 0) return ord_n(a, ty_.tower.N());
  if (value_cache_.size() <= static_cast<size_t>(L)) value_cache_.resize(L + 1);
  auto it = value_cache_[L].find(a);
  if (it != value_cache_[L].end()) return it->second;
  const TypeLevel& T = ty_.lv[L];
  Expansion ex = expand(a, T.g);
  Val best = 0;
  bool first = true;
  for (size_t s = 0; s < ex.coeffs.size(); ++s) {
    if (ex.coeffs[s].is_zero()) continue;
    Val u = value(L - 1, ex.coeffs[s]) + static_cast<Val>(s) * T.V;
    Val y = T.e * u + T.h * static_cast<Val>(s);
    if (first || y < best) best = y;
    first = false;
  }
  value_cache_[L].emplace(a, best);
  return best;
}

std::vector<CloudPoint> Analyzer::cloud(int L, const IntPoly& g, Val V, const IntPoly& f, int bound) {
  const Tower& A = ty_.tower;
  Expansion ex = expand(f, g, bound);
  std::vector<CloudPoint> out;
  for (size_t s = 0; s < ex.coeffs.size(); ++s) {
    if (ex.coeffs[s].is_zero()) continue;
    const LevelInfo& I = info(L - 1, ex.coeffs[s]);
    // The residual coefficient must be a unit in A_L.
    PolyA d = A.gcd(A.modulus(L - 1), I.R);
    if (!A.pis_one(d)) A.raise_t_factor(L - 1, d);
    Elem c = A.embed(I.R);
    if (L - 1 >= 1) c = A.mul(A.zpow(L, I.nu), c);
    out.push_back(CloudPoint{static_cast<Val>(s), I.v + static_cast<Val>(s) * V, std::move(c)});
  }
  return out;
}

const LevelInfo& Analyzer::info(int L, const IntPoly& a) {
  if (a.is_zero()) throw std::invalid_argument("info of zero");
  if (info_cache_.size() <= static_cast<size_t>(L)) info_cache_.resize(L + 1);
  auto it = info_cache_[L].find(a);
  if (it != info_cache_[L].end()) return it->second;
  const Tower& A = ty_.tower;
  LevelInfo I;
  if (L == 0) {
    for (const auto& c : a.coeffs()) {
      if (c == 0) continue;
      Int unit = ord_n(c, A.N()).second;
      Int g = gcd(unit, A.N());
      if (g != 1) A.raise_n_factor(g);
    }
    auto [v, R] = r0(A, a);
    I.v = v;
    I.left = Vertex{0, v};
    I.R = std::move(R);
  } else {
    const TypeLevel& T = ty_.lv[L];
    auto cl = cloud(L, T.g, T.V, a);
    I.R = residual(A, L, cl, T.h, T.e);
    __int128 best = 0;
    bool first = true;
    for (const auto& p : cl) {
      __int128 y = static_cast<__int128>(T.e) * p.u + static_cast<__int128>(T.h) * p.s;
      if (first || y < best) {
        best = y;
        I.left = Vertex{p.s, p.u};
      }
      first = false;
    }
    I.v = static_cast<Val>(best);
    I.nu = T.ellp * I.left.s - T.ell * I.left.u;
  }
  return info_cache_[L].emplace(a, std::move(I)).first->second;
}

NewtonPolygon polygon_of(const std::vector<CloudPoint>& cloud) {
  std::vector<Vertex> pts;
  for (const auto& p : cloud) pts.push_back(Vertex{p.s, p.u});
  return NewtonPolygon(std::move(pts));
}

PolyA residual(const Tower& A, int L, const std::vector<CloudPoint>& cloud, Val h, Val e) {
  if (cloud.empty()) throw std::invalid_argument("residual of an empty cloud");
  __int128 best = 0;
  bool first = true;
  for (const auto& p : cloud) {
    __int128 y = static_cast<__int128>(e) * p.u + static_cast<__int128>(h) * p.s;
    if (first || y < best) best = y;
    first = false;
  }
  Val s0 = -1;
  std::vector<std::pair<Val, const Elem*>> on_line;
  for (const auto& p : cloud) {
    __int128 y = static_cast<__int128>(e) * p.u + static_cast<__int128>(h) * p.s;
    if (y != best) continue;
    if (s0 < 0) s0 = p.s;
    on_line.emplace_back(p.s, &p.c);
  }
  Val deg = (on_line.back().first - s0) / e;
  PolyA R{L, std::vector<Elem>(static_cast<size_t>(deg + 1), A.zero(L))};
  for (const auto& [s, c] : on_line) R.c[static_cast<size_t>((s - s0) / e)] = *c;
  return R;
}

Val vr(const SFType& ty, const IntPoly& f) {
  Analyzer an(ty);
  return an.value(ty.order(), f);
}

Val nu(const SFType& ty, int i, const IntPoly& a) {
  Analyzer an(ty);
  return an.info(i, a).nu;
}

int ord_ty(const SFType& ty, const IntPoly& f) {
  Analyzer an(ty);
  int r = ty.order();
  return ty.tower.ord(an.info(r, f).R, ty.t(r));
}

NewtonResult newton(const SFType& ty, int ell, const IntPoly& f) {
  Analyzer an(ty);
  NewtonResult nr;
  nr.cloud = an.cloud(ty.order() + 1, ty.g_next, ty.V_next, f, ell);
  nr.polygon = polygon_of(nr.cloud);
  return nr;
}

PolyA residual(const SFType& ty, const NewtonResult& nr, Val h, Val e) {
  return residual(ty.tower, ty.order() + 1, nr.cloud, h, e);
}

IntPoly construct_with_residue(const SFType& ty, int L, Val v, const Elem& alpha) {
  const Tower& A = ty.tower;
  if (v < 0) throw std::logic_error("construct_with_residue: negative value");
  if (A.is_zero(alpha)) throw std::logic_error("construct_with_residue: zero residue");
  if (L == 1) {
    std::vector<Int> c;
    Int Nv = ipow(A.N(), static_cast<unsigned long>(v));
    for (const auto& x : alpha.c) {
      if (x != 0) {
        Int g = gcd(x, A.N());
        if (g != 1) A.raise_n_factor(g);
      }
      c.push_back(x * Nv);
    }
    return IntPoly(std::move(c));
  }
  const TypeLevel& T = ty.lv[L - 1];
  const Val e = T.e, h = T.h;
  Val s0 = floor_mod(floor_mod(v, e) * T.ell, e);
  Val u0 = (v - h * s0) / e;
  Val nu0 = T.ellp * s0 - T.ell * u0;
  Elem beta = A.mul(alpha, A.zpow(L, -nu0));
  PolyA coords = A.as_poly(beta);
  IntPoly out;
  IntPoly gpow = T.g.pow(static_cast<int>(s0));
  IntPoly ge = T.g.pow(static_cast<int>(e));
  for (int j = 0; j <= coords.deg(); ++j, gpow *= ge) {
    const Elem& cj = coords.c[j];
    if (A.is_zero(cj)) continue;
    A.inv(cj);
    Val s = s0 + j * e;
    Val u = u0 - j * h;
    Val vprime = u - s * T.V;
    if (vprime < 0) throw std::logic_error("construct_with_residue: infeasible value");
    out += construct_with_residue(ty, L - 1, vprime, cj) * gpow;
  }
  return out;
}

IntPoly representative(const SFType& ty) {
  int r = ty.order();
  const Tower& A = ty.tower;
  if (r == 0) return lift_order_zero(A, ty.t(0));
  const TypeLevel& T = ty.lv[r];
  const int f = ty.f(r);
  const PolyA& t = ty.t(r);
  IntPoly ge = T.g.pow(static_cast<int>(T.e));
  IntPoly g = ge.pow(f);
  IntPoly gk = IntPoly::constant(1);
  for (int k = 0; k < f; ++k, gk *= ge) {
    if (A.is_zero(t.c[k])) continue;
    Val w = (f - k) * (T.e * T.V + T.h);
    g += construct_with_residue(ty, r, w, t.c[k]) * gk;
  }

  // Postcondition: one side of slope -h_r/e_r, length e_r f_r, residual t_r.
  Analyzer an(ty);
  auto cl = an.cloud(r, T.g, T.V, g);
  NewtonPolygon np = polygon_of(cl);
  const auto& hull = np.hull();
  bool ok = hull.size() == 2 && hull[0].s == 0 && hull[1].s == T.e * f && (hull[0].u - hull[1].u) * T.e == T.h * T.e * f;
  ok = ok && residual(A, r, cl, T.h, T.e) == t;
  if (!ok) throw std::logic_error("representative: postcondition failed");
  return g;
}

std::string polygon_dump(const NewtonPolygon& np) {
  std::ostringstream os;
  for (const auto& v : np.principal_vertices()) os << v.s << " " << v.u << "\n";
  for (const auto& s : np.principal_sides()) os << "side " << s.h << "/" << s.e << " " << s.s0 << " " << s.s1 << "\n";
  return os.str();
}

std::string polygon_svg(const NewtonPolygon& np) {
  const int scale = 40, pad = 20;
  Val smax = 1, umax = 1;
  for (const auto& p : np.cloud()) {
    smax = std::max(smax, p.s);
    umax = std::max(umax, p.u);
  }
  auto X = [&](Val s) { return pad + s * scale; };
  auto Y = [&](Val u) { return pad + (umax - u) * scale; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * pad + smax * scale << "\" height=\""
     << 2 * pad + umax * scale << "\">\n";
  for (const auto& p : np.cloud())
    os << "  <circle cx=\"" << X(p.s) << "\" cy=\"" << Y(p.u) << "\" r=\"3\" fill=\"black\"/>\n";
  auto pv = np.principal_vertices();
  if (pv.size() > 1) {
    os << "  <polyline fill=\"none\" stroke=\"blue\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < pv.size(); ++i) os << (i ? " " : "") << X(pv[i].s) << "," << Y(pv[i].u);
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sfom
