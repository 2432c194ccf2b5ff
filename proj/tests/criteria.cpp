#include "criteria.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "irreducible.hpp"
#include "omprime.hpp"
#include "support.hpp"
#include "validate.hpp"

namespace crit {

using namespace sfom;
using fx::poly;

namespace {

struct Failures {
  Outcome out;
  int count = 0;
  void fail(const std::string& what) {
    if (count++ < 5) out.detail += (out.detail.empty() ? "" : "; ") + what;
    out.ok = false;
  }
  Outcome done(const std::string& summary) {
    if (out.ok) out.detail = summary;
    else if (count > 5) out.detail += "; ... " + std::to_string(count) + " failures";
    return out;
  }
};

IntegerLattice canonical(const IntegerLattice& L) { return hnf_merge({L}, true, L.dim()); }

IntegerLattice local_lattice(const SFOMRep& rep) {
  NBasisResult b = n_integral_basis(rep, true);
  return IntegerLattice::from_elements(rep.f.deg(), rep.N, b.basis);
}

std::string vtx(const Vertex& v) { return "(" + std::to_string(v.s) + "," + std::to_string(v.u) + ")"; }

// Checks that the principal polygon is the single segment a-b.
bool segment_is(const NewtonPolygon& np, Vertex a, Vertex b) {
  return np.principal_vertices() == std::vector<Vertex>{a, b};
}

// Discriminant primes of the N = 10007*10009 instance, factored offline.
const char* kStretchPrimes[] = {"2", "5", "7", "23", "239", "4451", "10007", "10009", "50080031",
                                "79455750425180320148669193210341"};

// ---- independent F_p polynomial arithmetic (coefficients in [0, p)) ----

using FpPoly = std::vector<long>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long fp_inv(long a, long p) {
  for (long x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

FpPoly fp_reduce(const std::vector<long>& a, long p) {
  FpPoly r;
  for (long x : a) r.push_back(((x % p) + p) % p);
  fp_trim(r);
  return r;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, long p) {
  long inv = fp_inv(b.back(), p);
  while (a.size() >= b.size()) {
    long c = a.back() * inv % p;
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    fp_trim(a);
  }
  return a;
}

FpPoly fp_quo(FpPoly a, const FpPoly& b, long p) {
  long inv = fp_inv(b.back(), p);
  FpPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    long c = a.back() * inv % p;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    fp_trim(a);
  }
  return q;
}

FpPoly fp_monic(FpPoly a, long p) {
  if (a.empty()) return a;
  long inv = fp_inv(a.back(), p);
  for (auto& x : a) x = x * inv % p;
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  while (!b.empty()) {
    FpPoly r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

// Multiplicity -> product of the monic irreducible factors of that multiplicity,
// by trial division over all monic polynomials of increasing degree.
std::map<int, FpPoly> fp_squarefree_classes(FpPoly f, long p) {
  std::map<int, FpPoly> out;
  f = fp_monic(f, p);
  for (int d = 1; static_cast<int>(f.size()) - 1 >= d; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long code = 0; code < count; ++code) {
      FpPoly g(d + 1, 1);
      long c = code;
      for (int i = 0; i < d; ++i, c /= p) g[i] = c % p;
      int m = 0;
      while (f.size() >= g.size() && fp_rem(f, g, p).empty()) {
        f = fp_quo(f, g, p);
        ++m;
      }
      if (m == 0) continue;
      FpPoly& slot = out[m];
      slot = slot.empty() ? g : fp_mul(slot, g, p);
    }
  }
  return out;
}

FpPoly fp_of(const PolyA& a, long p) {
  std::vector<long> v;
  for (const auto& e : a.c) v.push_back(e.c[0].get_si());
  return fp_reduce(v, p);
}

}  // namespace

Outcome quartic35_tree() {
  Failures F;
  const Int N = 35;
  auto so = sfom::sfom(fx::ex1(N), N);
  if (!so.ok()) {
    F.fail("modulus split: " + so.n_factor.get_str());
    return F.done("");
  }
  const auto& leaves = so.rep->leaves;
  if (leaves.size() != 1) {
    F.fail(std::to_string(leaves.size()) + " leaves");
    return F.done("");
  }
  const SFType& t = leaves[0];
  const Tower& A = t.tower;
  if (t.order() != 2) F.fail("order " + std::to_string(t.order()));
  if (t.t(0) != fx::pa(A, {0, 1})) F.fail("t_0 = " + A.str(t.t(0)));
  if (t.order() == 2) {
    if (t.lambda(1) != ratio(1, 2) || t.lambda(2) != ratio(3, 2)) F.fail("slopes");
    if (t.t(1) != A.pfrom_ints(1, {1, 1})) F.fail("t_1 = " + A.str(t.t(1)));
    if (t.t(2) != A.pfrom_ints(2, {1, 1})) F.fail("t_2 = " + A.str(t.t(2)));
    if (t.lv[2].g != poly({35, 0, 1})) F.fail("g_2 = " + t.lv[2].g.str());
    if (!segment_is(t.lv[1].polygon, {0, 2}, {4, 0})) F.fail("level-1 polygon");
    if (!segment_is(t.lv[2].polygon, {0, 7}, {2, 4})) F.fail("level-2 polygon");
  }
  return F.done("one leaf, slopes 1/2 and 3/2, g_2 = x^2+35");
}

Outcome quartic35_basis() {
  Failures F;
  const Int N = 35;
  IntPoly f = fx::ex1(N);
  auto so = sfom::sfom(f, N);
  if (!so.ok()) {
    F.fail("modulus split");
    return F.done("");
  }
  IntegerLattice got = local_lattice(*so.rep);
  IntegerLattice want = fx::lattice(4, N, {{poly({1}), 0}, {poly({0, 1}), 0}, {poly({0, 0, 1}), 1}, {poly({0, 35, 0, 1}), 2}});
  if (got != want) F.fail("lattice differs from {1, x, x^2/35, (x^3+35x)/35^2}");
  return F.done("HNF den " + got.den().get_str() + " matches");
}

Outcome quartic_two_primes() {
  Failures F;
  const Int N = Int(10007) * 10009;
  IntPoly f = fx::ex1(N);
  GlobalBasis gb = global_basis(f);
  if (!ring_closed(gb.merged, f)) F.fail("not a ring");
  if (!index_discriminant_check(gb.merged, f)) F.fail("index-discriminant identity");
  Int rest = abs(gb.D);
  for (const char* s : kStretchPrimes) {
    Int p(s);
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
    if (!p_maximal(gb.merged, f, p)) F.fail("not maximal at " + p.get_str());
  }
  if (rest != 1) F.fail("discriminant not fully factored");
  return F.done(std::to_string(gb.moduli.size()) + " moduli, maximal at all " +
                std::to_string(std::size(kStretchPrimes)) + " discriminant primes");
}

Outcome tower_family_11() {
  Failures F;
  const long p = 11;
  const int r = 3;
  IntPoly f = fx::ex2(p, r, 5);
  if (!is_irreducible(f)) {
    F.fail("f is reducible");
    return F.done("");
  }
  auto so = sfom::sfom(f, p);
  if (!so.ok()) {
    F.fail("modulus split");
    return F.done("");
  }
  const auto& leaves = so.rep->leaves;
  if (leaves.size() != 1 || leaves[0].order() != 1) {
    F.fail(std::to_string(leaves.size()) + " leaves");
    return F.done("");
  }
  const SFType& t = leaves[0];
  if (t.t(1) != t.tower.pfrom_ints(1, {6, 11, 6, 1})) F.fail("t_1 = " + t.tower.str(t.t(1)));
  if (t.lambda(1) != ratio(1, 2)) F.fail("slope");
  // Truncations of f: P_k = x^{2k} + b_2 x^{2k-2} + ... + b_{2k}.
  std::vector<std::pair<IntPoly, int>> want;
  const int n = 2 * r;
  for (int k = 0; k < r; ++k) {
    std::vector<Int> c(f.coeffs().begin() + (n - 2 * k), f.coeffs().end());
    IntPoly Pk(c);
    want.push_back({Pk, k});
    want.push_back({Pk * IntPoly::x(), k});
  }
  IntegerLattice got = local_lattice(*so.rep);
  if (canonical(got) != canonical(fx::lattice(n, p, want))) F.fail("basis lattice differs");
  return F.done("one order-1 leaf, t_1 = (y+1)(y+2)(y+3), basis matches");
}

Outcome order_two_family() {
  Failures F;
  const Int N = 37 * 41;
  IntPoly f = fx::ex3(3, N);
  auto so = sfom::sfom(f, N);
  if (!so.ok()) {
    F.fail("modulus split");
    return F.done("");
  }
  const auto& leaves = so.rep->leaves;
  if (leaves.size() != 1 || leaves[0].order() != 2) {
    F.fail(std::to_string(leaves.size()) + " leaves");
    return F.done("");
  }
  const SFType& t = leaves[0];
  const Tower& A = t.tower;
  if (t.lambda(1) != ratio(1, 2) || t.lambda(2) != ratio(2, 3)) F.fail("slopes");
  if (t.t(1) != A.pfrom_ints(1, {-1, 0, 1})) F.fail("t_1 = " + A.str(t.t(1)));
  if (t.t(2) != A.pfrom_ints(2, {-6, 11, -6, 1})) F.fail("t_2 = " + A.str(t.t(2)));
  ProjectReport pr = project_check(*so.rep, 37);
  if (!pr.ok) F.fail("projection at 37");
  if (pr.prime_leaves != 6) F.fail(std::to_string(pr.prime_leaves) + " prime leaves at 37");
  return F.done("one order-2 leaf, slopes 1/2 and 2/3, 6 prime leaves at 37");
}

Outcome robust_products(int min_instances, unsigned long seed) {
  Failures F;
  std::mt19937_64 rng(seed);
  std::vector<SFType> types;
  auto add_leaves = [&](const IntPoly& f, const Int& N) {
    auto so = sfom::sfom(f, N);
    if (!so.ok()) return;
    for (const auto& l : so.rep->leaves)
      if (l.order() >= 1) types.push_back(l);
  };
  add_leaves(fx::ex1(35), 35);
  add_leaves(fx::ex1(Int(10007) * 10009), Int(10007) * 10009);
  add_leaves(fx::ex2(11, 3, 5), 11);
  add_leaves(fx::ex3(3, 37 * 41), 37 * 41);
  auto fixtures = fx::load_fixtures();
  for (const auto& rec : fixtures["local"]) add_leaves(fx::poly_from_json(rec["f"]), Int(rec["p"].get<std::string>()));
  // Composite moduli built from the local fixtures' primes.
  for (size_t i = 0; i + 1 < fixtures["local"].size(); i += 3) {
    const auto& rec = fixtures["local"][i];
    add_leaves(fx::poly_from_json(rec["f"]), Int(rec["p"].get<std::string>()) * 1009);
  }

  auto rand_coef = [&](const Int& N) {
    Int c = static_cast<long>(rng() % 201) - 100;
    return c * ipow(N, rng() % 3);
  };
  auto random_expansion = [&](const SFType& ty) {
    const IntPoly& g = ty.lv[ty.order()].g;
    int terms = 1 + static_cast<int>(rng() % 3);
    IntPoly f, gp = IntPoly::constant(1);
    for (int s = 0; s < terms; ++s, gp *= g) {
      std::vector<Int> c;
      for (int i = 0; i < g.deg(); ++i) c.push_back(rand_coef(ty.tower.N()));
      f += IntPoly(c) * gp;
    }
    return f;
  };
  auto random_plain = [&](const SFType& ty) {
    int d = static_cast<int>(rng() % (2 * ty.lv[ty.order()].g.deg() + 1));
    std::vector<Int> c;
    for (int i = 0; i <= d; ++i) c.push_back(rand_coef(ty.tower.N()));
    return IntPoly(c);
  };

  int full = 0, value_only = 0;
  for (long attempt = 0; attempt < 200000 && full < min_instances; ++attempt) {
    const SFType& ty = types[rng() % types.size()];
    const int r = ty.order();
    IntPoly f = random_expansion(ty);
    IntPoly h = rng() % 2 ? random_expansion(ty) : random_plain(ty);
    if (f.is_zero() || h.is_zero()) continue;
    Analyzer an(ty);
    LevelInfo If, Ih;
    try {
      If = an.info(r, f);
    } catch (const FactorEvent&) {
      continue;  // f not robust
    }
    IntPoly fh = f * h;
    if (an.value(r, fh) != an.value(r, f) + an.value(r, h)) F.fail("v_r not additive");
    ++value_only;
    try {
      Ih = an.info(r, h);
    } catch (const FactorEvent&) {
      continue;
    }
    try {
      const LevelInfo& Ifh = an.info(r, fh);
      if (Ifh.v != If.v + Ih.v) F.fail("v_r not additive (certified)");
      if (!(Ifh.left == Vertex{If.left.s + Ih.left.s, If.left.u + Ih.left.u})) F.fail("S_r not additive");
      if (Ifh.R != ty.tower.pmul(If.R, Ih.R)) F.fail("R_r not multiplicative");
    } catch (const FactorEvent&) {
      F.fail("product of robust polynomials is not robust");
    }
    ++full;
  }
  if (full < min_instances) F.fail("only " + std::to_string(full) + " certified instances");
  return F.done(std::to_string(full) + " certified products, " + std::to_string(value_only) + " value checks, " +
                std::to_string(types.size()) + " types");
}

Outcome crt_oracle_z15(int max_deg) {
  Failures F;
  const long N = 15;
  const long primes[] = {3, 5};
  Tower A(N);
  auto all_monic = [&](int maxd) {
    std::vector<std::vector<long>> out;
    for (int d = 0; d <= maxd; ++d) {
      long count = 1;
      for (int i = 0; i < d; ++i) count *= N;
      for (long code = 0; code < count; ++code) {
        std::vector<long> c(d + 1, 1);
        long x = code;
        for (int i = 0; i < d; ++i, x /= N) c[i] = x % N;
        out.push_back(c);
      }
    }
    return out;
  };
  auto to_a = [&](const std::vector<long>& c) {
    std::vector<Int> v(c.begin(), c.end());
    return A.pfrom_ints(0, v);
  };
  auto proper = [&](const FactorEvent& e) { return e.level == -1 && (e.n_factor == 3 || e.n_factor == 5); };

  auto S = all_monic(max_deg);
  auto T = all_monic(max_deg - 1);
  // Non-monic linear divisors exercise the unit tests on leading coefficients.
  std::vector<std::vector<long>> nonmonic;
  for (long a = 2; a < N; ++a)
    for (long b = 0; b < N; ++b) nonmonic.push_back({b, a});

  long gcds = 0, sfds = 0, events = 0;
  auto check_gcd = [&](const std::vector<long>& s, const PolyA& sa, const std::vector<long>& t, const PolyA& ta) {
    ++gcds;
    try {
      PolyA d = A.gcd(sa, ta);
      for (long p : primes)
        if (fp_of(d, p) != fp_gcd(fp_reduce(s, p), fp_reduce(t, p), p)) F.fail("gcd mismatch mod " + std::to_string(p));
    } catch (const FactorEvent& e) {
      ++events;
      if (!proper(e)) F.fail("gcd raised an improper factor");
    }
  };
  std::vector<PolyA> TA, NA;
  for (const auto& t : T) TA.push_back(to_a(t));
  for (const auto& t : nonmonic) NA.push_back(to_a(t));
  for (const auto& s : S) {
    PolyA sa = to_a(s);
    for (size_t i = 0; i < T.size(); ++i) check_gcd(s, sa, T[i], TA[i]);
    if (static_cast<int>(s.size()) <= max_deg)
      for (size_t i = 0; i < nonmonic.size(); ++i) check_gcd(s, sa, nonmonic[i], NA[i]);
    std::vector<long> ds;
    for (size_t i = 1; i < s.size(); ++i) ds.push_back(static_cast<long>(i) * s[i] % N);
    if (std::any_of(ds.begin(), ds.end(), [](long c) { return c != 0; })) check_gcd(s, sa, ds, to_a(ds));
    if (s.size() < 2) continue;
    ++sfds;
    try {
      auto dec = A.sfd(sa);
      for (long p : primes) {
        auto want = fp_squarefree_classes(fp_reduce(s, p), p);
        std::map<int, FpPoly> got;
        for (const auto& [q, m] : dec) got[m] = fp_of(q, p);
        if (got != want) F.fail("sfd mismatch mod " + std::to_string(p));
      }
    } catch (const FactorEvent& e) {
      ++events;
      if (!proper(e)) F.fail("sfd raised an improper factor");
    }
  }
  return F.done(std::to_string(gcds) + " gcds, " + std::to_string(sfds) + " sfds, " + std::to_string(events) +
                " verified factor events");
}

Outcome quotient_checks() {
  Failures F;
  struct Case {
    std::string name;
    IntPoly f;
    Int N;
    std::vector<long> primes;
  };
  std::vector<Case> cases = {{"quartic over 35", fx::ex1(35), 35, {5, 7}},
                             {"tower family over 11", fx::ex2(11, 3, 5), 11, {11}},
                             {"order-two family over 37*41", fx::ex3(3, 37 * 41), 37 * 41, {37, 41}}};
  int leaves = 0;
  for (const auto& c : cases) {
    auto so = sfom::sfom(c.f, c.N);
    if (!so.ok()) {
      F.fail(c.name + ": modulus split");
      continue;
    }
    for (const auto& leaf : so.rep->leaves) {
      ++leaves;
      std::string why;
      if (!rquot_check(leaf, c.f, &why)) F.fail(c.name + " residual suffix: " + why);
      for (long p : c.primes)
        if (!denquot_check(leaf, c.f, c.N, p, &why)) F.fail(c.name + " quotient denominator: " + why);
    }
  }
  return F.done(std::to_string(leaves) + " leaves checked");
}

Outcome random_maximality(int min_fields) {
  Failures F;
  auto fixtures = fx::load_fixtures();
  int fields = 0;
  for (const auto& rec : fixtures["random"]) {
    IntPoly f = fx::poly_from_json(rec["f"]);
    std::string tag = f.str();
    GlobalBasis gb = global_basis(f);
    if (!ring_closed(gb.merged, f)) {
      F.fail(tag + ": not a ring");
      continue;
    }
    if (!index_discriminant_check(gb.merged, f)) F.fail(tag + ": index-discriminant identity");
    if (order_discriminant(gb.merged, f) != Int(rec["field_disc"].get<std::string>())) F.fail(tag + ": field discriminant");
    for (const auto& p : fx::primes_of(rec))
      if (!p_maximal(gb.merged, f, p)) F.fail(tag + ": not maximal at " + p.get_str());
    ++fields;
  }
  if (fields < min_fields) F.fail("only " + std::to_string(fields) + " fields");
  return F.done(std::to_string(fields) + " fields maximal at every discriminant prime");
}

Outcome local_engines_agree(int min_fixtures) {
  Failures F;
  auto fixtures = fx::load_fixtures();
  int count = 0;
  for (const auto& rec : fixtures["local"]) {
    IntPoly f = fx::poly_from_json(rec["f"]);
    Int p(rec["p"].get<std::string>());
    if (p <= f.deg()) continue;
    auto so = sfom::sfom(f, p);
    if (!so.ok()) {
      F.fail(f.str() + ": prime modulus split");
      continue;
    }
    IntegerLattice a = canonical(local_lattice(*so.rep));
    IntegerLattice b = canonical(local_lattice(om_prime(f, p)));
    if (a != b) F.fail(f.str() + " at " + p.get_str());
    ++count;
  }
  if (count < min_fixtures) F.fail("only " + std::to_string(count) + " fixtures");
  return F.done(std::to_string(count) + " fixtures agree");
}

}  // namespace crit
