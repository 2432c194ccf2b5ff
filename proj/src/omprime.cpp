#include "omprime.hpp"

#include <algorithm>
#include <memory>

namespace sfom {

namespace {

struct FF {
  const Tower& A;
  int L;
  Int p, q;  // characteristic and field size

  FF(const Tower& A, int L) : A(A), L(L), p(A.N()) { q = ipow(p, A.dim(L)); }

  PolyA mulmod(const PolyA& a, const PolyA& b, const PolyA& g) const { return A.rem_monic(A.pmul(a, b), g); }

  PolyA powmod(const PolyA& a, const Int& k, const PolyA& g) const {
    PolyA r = A.pconst(A.one(L)), b = A.rem_monic(a, g);
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = 0; i < bits; ++i) {
      if (mpz_tstbit(k.get_mpz_t(), i)) r = mulmod(r, b, g);
      if (i + 1 < bits) b = mulmod(b, b, g);
    }
    return r;
  }

  Elem pth_root(const Elem& a) const { return A.pow(a, q / p); }

  // g(y) with g(y)^p = f(y); f has only exponents divisible by p.
  PolyA pth_root(const PolyA& f) const {
    PolyA r{L, {}};
    unsigned long pp = p.get_ui();
    for (size_t k = 0; k * pp < f.c.size(); ++k) r.c.push_back(pth_root(f.c[k * pp]));
    return r;
  }

  std::vector<std::pair<PolyA, int>> squarefree(const PolyA& f) const {
    std::vector<std::pair<PolyA, int>> out;
    if (f.deg() <= 0) return out;
    int pi = static_cast<int>(p.get_ui());
    PolyA df = A.pderiv(f);
    PolyA c = f, w = A.pconst(A.one(L));
    if (!df.is_zero()) {
      c = A.gcd(f, df);
      w = A.exact_divide(f, c);
    }
    for (int i = 1; w.deg() > 0; ++i) {
      PolyA y = A.gcd(w, c);
      PolyA fac = A.exact_divide(w, y);
      if (fac.deg() > 0) out.emplace_back(fac, i);
      w = y;
      c = A.exact_divide(c, y);
    }
    if (c.deg() > 0)
      for (auto& [h, m] : squarefree(pth_root(c))) out.emplace_back(h, m * pi);
    return out;
  }

  std::vector<std::pair<PolyA, int>> distinct_degree(PolyA g) const {
    std::vector<std::pair<PolyA, int>> out;
    PolyA y = A.pvar(L), h = y;
    for (int i = 1; g.deg() >= 2 * i; ++i) {
      h = powmod(h, q, g);
      PolyA t = A.rem_monic(A.psub(h, y), g);
      PolyA d = t.is_zero() ? g : A.gcd(g, t);
      if (d.deg() > 0) {
        out.emplace_back(d, i);
        g = A.exact_divide(g, d);
        h = A.rem_monic(h, g);
      }
    }
    if (g.deg() > 0) out.emplace_back(g, g.deg());
    return out;
  }

  PolyA random_poly(int deg, gmp_randclass& rng) const {
    PolyA r{L, {}};
    for (int i = 0; i < deg; ++i) {
      Elem e = A.zero(L);
      for (auto& x : e.c) x = rng.get_z_range(p);
      r.c.push_back(e);
    }
    while (!r.c.empty() && A.is_zero(r.c.back())) r.c.pop_back();
    return r;
  }

  void equal_degree(const PolyA& g, int i, gmp_randclass& rng, std::vector<PolyA>& out) const {
    if (g.deg() == i) {
      out.push_back(g);
      return;
    }
    for (;;) {
      PolyA a = random_poly(g.deg(), rng);
      if (a.deg() < 1) continue;
      PolyA b;
      if (p == 2) {
        // Trace map down to F_2.
        long k = static_cast<long>(A.dim(L)) * i;
        PolyA s = a, t = a;
        for (long j = 1; j < k; ++j) {
          t = mulmod(t, t, g);
          s = A.padd(s, t);
        }
        b = s;
      } else {
        Int e = (ipow(q, i) - 1) / 2;
        b = A.psub(powmod(a, e, g), A.pconst(A.one(L)));
      }
      if (b.is_zero()) continue;
      PolyA d = A.gcd(g, b);
      if (d.deg() > 0 && d.deg() < g.deg()) {
        equal_degree(d, i, rng, out);
        equal_degree(A.exact_divide(g, d), i, rng, out);
        return;
      }
    }
  }
};

bool elem_less(const Elem& a, const Elem& b) { return a.c < b.c; }

bool poly_less(const PolyA& a, const PolyA& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  return std::lexicographical_compare(a.c.begin(), a.c.end(), b.c.begin(), b.c.end(), elem_less);
}

}  // namespace

std::vector<std::pair<PolyA, int>> ff_factor(const Tower& A, const PolyA& f0, gmp_randclass& rng) {
  if (f0.is_zero()) throw std::invalid_argument("ff_factor: zero polynomial");
  FF F(A, f0.lvl);
  PolyA f = A.make_monic(f0);
  std::vector<std::pair<PolyA, int>> out;
  for (const auto& [s, m] : F.squarefree(f)) {
    for (const auto& [d, i] : F.distinct_degree(s)) {
      std::vector<PolyA> irr;
      F.equal_degree(d, i, rng, irr);
      for (auto& g : irr) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& x) { return x.first == g; });
        if (it != out.end())
          it->second += m;
        else
          out.emplace_back(std::move(g), m);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return poly_less(a.first, b.first);
  });
  return out;
}

SFOMRep om_prime(const IntPoly& f, const Int& p, unsigned long seed) {
  auto rng = std::make_shared<gmp_randclass>(gmp_randinit_default);
  rng->seed(seed);
  EngineOptions opt;
  opt.prime = true;
  opt.split = [rng](const Tower& A, const PolyA& R) { return ff_factor(A, R, *rng); };
  SplitOutcome out = run_engine(f, p, opt);
  return std::move(*out.rep);
}

}  // namespace sfom
