#include "irreducible.hpp"

#include <algorithm>
#include <set>

#include "artinalg.hpp"
#include "omprime.hpp"

namespace sfom {

namespace {

PolyA to_fp(const Tower& F, const IntPoly& a) { return F.pfrom_ints(0, a.coeffs()); }

IntPoly from_fp(const PolyA& a) {
  std::vector<Int> c;
  for (const auto& e : a.c) c.push_back(e.c[0]);
  return IntPoly(std::move(c));
}

IntPoly mod_coeffs(const IntPoly& a, const Int& m, bool symmetric) {
  std::vector<Int> c = a.coeffs();
  Int half = m / 2;
  for (auto& x : c) {
    x = mod_pos(x, m);
    if (symmetric && x > half) x -= m;
  }
  return IntPoly(std::move(c));
}

// Degrees d for which some subset of the modular factors has degree d.
std::set<int> subset_degrees(const std::vector<int>& degs) {
  std::set<int> s{0};
  for (int d : degs) {
    std::set<int> t = s;
    for (int x : s) t.insert(x + d);
    s = std::move(t);
  }
  return s;
}

// Lifts f = g*h mod p to mod p^k (f, g, h monic, g and h coprime mod p).
std::pair<IntPoly, IntPoly> hensel_lift(const IntPoly& f, IntPoly g, IntPoly h, const Int& p, int k) {
  Tower F(p);
  auto [d, s, t] = F.xgcd(to_fp(F, g), to_fp(F, h));
  if (d.deg() != 0) throw std::logic_error("hensel_lift: factors not coprime");
  Int pj = p;
  for (int j = 1; j < k; ++j) {
    IntPoly err = (f - g * h).div_exact(pj);
    PolyA e = to_fp(F, err);
    auto [q, r] = F.quotrem_monic(F.pmul(t, e), to_fp(F, g));
    PolyA dh = F.padd(F.pmul(s, e), F.pmul(q, to_fp(F, h)));
    g += from_fp(r) * pj;
    h += from_fp(dh) * pj;
    pj *= p;
  }
  return {g, h};
}

}  // namespace

std::optional<IntPoly> proper_factor(const IntPoly& f, unsigned long seed) {
  if (!f.is_monic()) throw std::invalid_argument("proper_factor: f must be monic");
  const int n = f.deg();
  if (n <= 1) return std::nullopt;
  Int D = discriminant(f);
  if (D == 0) {
    IntPoly df = f.derivative();
    // gcd(f, f') over Q is a monic integer factor; compute it through Z[x] pseudo-remainders.
    IntPoly a = f, b = df;
    while (!b.is_zero()) {
      IntPoly r = a;
      while (!r.is_zero() && r.deg() >= b.deg()) {
        IntPoly m = IntPoly::monomial(r.lc(), r.deg() - b.deg());
        r = r * b.lc() - m * b;
        Int c = r.content();
        if (c > 1) r = r.div_exact(c);
      }
      a = b;
      b = r;
    }
    if (a.lc() < 0) a = -a;
    return a.div_exact(a.content());
  }

  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  std::set<int> possible;
  for (int i = 1; i < n; ++i) possible.insert(i);
  Int best_p;
  std::vector<IntPoly> best;
  int tried = 0;
  for (long p : primes_up_to(2000)) {
    if (p <= n || mpz_divisible_p(D.get_mpz_t(), Int(p).get_mpz_t())) continue;
    Tower F(p);
    auto facs = ff_factor(F, to_fp(F, f), rng);
    std::vector<int> degs;
    for (const auto& [g, m] : facs) degs.push_back(g.deg());
    std::set<int> sd = subset_degrees(degs);
    std::set<int> keep;
    for (int d : possible)
      if (sd.count(d)) keep.insert(d);
    possible = std::move(keep);
    if (possible.empty()) return std::nullopt;
    if (best.empty() || facs.size() < best.size()) {
      best.clear();
      for (const auto& [g, m] : facs) best.push_back(from_fp(g));
      best_p = p;
    }
    if (++tried == 8) break;
  }

  // Factor coefficients are bounded by 2^n * ||f||_2.
  Int norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Int bound = sqrt(norm2) + 1;
  bound <<= n;
  Int m = best_p;
  int k = 1;
  while (m <= 2 * bound) {
    m *= best_p;
    ++k;
  }

  // Lift the factorization one factor at a time.
  std::vector<IntPoly> lifted;
  IntPoly rest = f;
  for (size_t i = 0; i + 1 < best.size(); ++i) {
    IntPoly h = IntPoly::constant(1);
    for (size_t j = i + 1; j < best.size(); ++j) h = mod_coeffs(h * best[j], best_p, false);
    auto [g, hh] = hensel_lift(rest, best[i], h, best_p, k);
    lifted.push_back(mod_coeffs(g, m, false));
    rest = mod_coeffs(hh, m, false);
  }
  lifted.push_back(rest);

  const int r = static_cast<int>(lifted.size());
  for (int size = 1; 2 * size <= r; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      int deg = 0;
      for (int i : idx) deg += lifted[i].deg();
      if (possible.count(deg)) {
        IntPoly g = IntPoly::constant(1);
        for (int i : idx) g = mod_coeffs(g * lifted[i], m, false);
        g = mod_coeffs(g, m, true);
        auto [q, rem] = divrem_monic(f, g);
        if (rem.is_zero()) return g;
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == r - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace sfom
