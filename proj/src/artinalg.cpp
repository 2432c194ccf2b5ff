#include "artinalg.hpp"

#include <sstream>

namespace sfom {

Tower::Tower(Int N) : N_(std::move(N)) {
  if (N_ <= 1) throw std::invalid_argument("Tower: N must exceed 1");
}

Tower Tower::extend(const PolyA& t) const {
  if (t.lvl != length()) throw std::invalid_argument("Tower::extend: modulus at wrong level");
  if (t.deg() < 1 || !is_one(t.lc())) throw std::invalid_argument("Tower::extend: modulus not monic");
  require_strongly_unitary(t);
  Tower r = *this;
  r.t_.push_back(t);
  r.dim_.push_back(dim_.back() * static_cast<size_t>(t.deg()));
  return r;
}

Tower Tower::truncate(int k) const {
  Tower r = *this;
  r.t_.resize(k);
  r.dim_.resize(k + 1);
  return r;
}

bool Tower::same_prefix(const Tower& o, int k) const {
  if (N_ != o.N_ || length() < k || o.length() < k) return false;
  for (int i = 0; i < k; ++i)
    if (t_[i] != o.t_[i]) return false;
  return true;
}

Elem Tower::zero(int L) const { return Elem{L, std::vector<Int>(dim(L), 0)}; }

Elem Tower::one(int L) const { return from_int(L, 1); }

Elem Tower::from_int(int L, const Int& a) const {
  Elem e = zero(L);
  e.c[0] = mod_pos(a, N_);
  return e;
}

bool Tower::is_zero(const Elem& a) const {
  for (const auto& x : a.c)
    if (x != 0) return false;
  return true;
}

bool Tower::is_one(const Elem& a) const {
  if (a.c.empty() || a.c[0] != 1) return false;
  for (size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return false;
  return true;
}

Elem Tower::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] += b.c[i];
    if (r.c[i] >= N_) r.c[i] -= N_;
  }
  return r;
}

Elem Tower::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] -= b.c[i];
    if (r.c[i] < 0) r.c[i] += N_;
  }
  return r;
}

Elem Tower::neg(const Elem& a) const {
  Elem r = a;
  for (auto& x : r.c)
    if (x != 0) x = N_ - x;
  return r;
}

Elem Tower::scale(const Elem& a, const Int& k) const {
  Elem r = a;
  Int kk = mod_pos(k, N_);
  for (auto& x : r.c) x = mod_pos(x * kk, N_);
  return r;
}

std::vector<Elem> Tower::blocks(const Elem& a) const {
  int L = a.lvl;
  size_t d = dim(L - 1);
  int f = this->f(L - 1);
  std::vector<Elem> out(f);
  for (int k = 0; k < f; ++k)
    out[k] = Elem{L - 1, std::vector<Int>(a.c.begin() + k * d, a.c.begin() + (k + 1) * d)};
  return out;
}

Elem Tower::join(int L, const std::vector<Elem>& bl) const {
  Elem r{L, {}};
  r.c.reserve(dim(L));
  for (const auto& b : bl) r.c.insert(r.c.end(), b.c.begin(), b.c.end());
  return r;
}

// Reduces a product polynomial over A_{L-1} modulo the monic t_{L-1}.
void Tower::reduce_blocks(std::vector<Elem>& prod, int L) const {
  const PolyA& t = t_[L - 1];
  int f = t.deg();
  for (int k = static_cast<int>(prod.size()) - 1; k >= f; --k) {
    if (is_zero(prod[k])) continue;
    Elem c = prod[k];
    for (int j = 0; j < f; ++j) {
      if (is_zero(t.c[j])) continue;
      prod[k - f + j] = sub(prod[k - f + j], mul(c, t.c[j]));
    }
    prod[k] = zero(L - 1);
  }
  prod.resize(f, zero(L - 1));
}

Elem Tower::mul(const Elem& a, const Elem& b) const {
  if (a.lvl == 0) return Elem{0, {mod_pos(a.c[0] * b.c[0], N_)}};
  int L = a.lvl;
  auto A = blocks(a), B = blocks(b);
  std::vector<Elem> prod(2 * A.size() - 1, zero(L - 1));
  for (size_t i = 0; i < A.size(); ++i) {
    if (is_zero(A[i])) continue;
    for (size_t j = 0; j < B.size(); ++j) {
      if (is_zero(B[j])) continue;
      prod[i + j] = add(prod[i + j], mul(A[i], B[j]));
    }
  }
  reduce_blocks(prod, L);
  return join(L, prod);
}

Elem Tower::pow(const Elem& a, const Int& k) const {
  if (k < 0) return pow(inv(a), -k);
  Elem r = one(a.lvl), b = a;
  size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(k.get_mpz_t(), i)) r = mul(r, b);
    if (i + 1 < bits) b = mul(b, b);
  }
  return r;
}

void Tower::raise_n_factor(const Int& g) const {
  if (!(g > 1 && g < N_ && mpz_divisible_p(N_.get_mpz_t(), g.get_mpz_t())))
    throw std::logic_error("invalid factor of N: " + g.get_str());
  throw FactorEvent(g);
}

void Tower::raise_t_factor(int i, const PolyA& d) const {
  if (d.lvl != i || d.deg() < 1 || d.deg() >= f(i) || !is_one(d.lc()))
    throw std::logic_error("invalid factor of a modulus");
  if (!quotrem_monic(t_[i], d).second.is_zero()) throw std::logic_error("factor does not divide its modulus");
  throw FactorEvent(i, d);
}

Elem Tower::inv(const Elem& a) const {
  if (is_zero(a)) throw std::invalid_argument("Tower::inv: zero element");
  if (a.lvl == 0) {
    Elem r{0, {Int()}};
    if (!mpz_invert(r.c[0].get_mpz_t(), a.c[0].get_mpz_t(), N_.get_mpz_t()))
      raise_n_factor(sfom::gcd(a.c[0], N_));
    return r;
  }
  int L = a.lvl;
  auto [d, u, v] = xgcd(as_poly(a), t_[L - 1]);
  if (!pis_one(d)) raise_t_factor(L - 1, d);
  return embed(u);
}

bool Tower::is_unit(const Elem& a) const {
  if (is_zero(a)) return false;
  try {
    inv(a);
    return true;
  } catch (const FactorEvent&) {
    return false;
  }
}

Elem Tower::embed(const PolyA& p) const {
  int L = p.lvl + 1;
  std::vector<Elem> prod = p.c;
  if (prod.empty()) return zero(L);
  reduce_blocks(prod, L);
  return join(L, prod);
}

PolyA Tower::as_poly(const Elem& a) const {
  PolyA p{a.lvl - 1, blocks(a)};
  trim(p);
  return p;
}

Elem Tower::lift(const Elem& a, int L) const {
  Elem r = a;
  while (r.lvl < L) {
    Elem up = zero(r.lvl + 1);
    std::copy(r.c.begin(), r.c.end(), up.c.begin());
    r = std::move(up);
  }
  return r;
}

Elem Tower::zpow(int L, Val k) const {
  if (L < 1) throw std::invalid_argument("zpow: level must be positive");
  if (k == 0) return one(L);
  Elem z = embed(pvar(L - 1));
  if (k > 0) return pow(z, Int(static_cast<long>(k)));
  // z^{-1} = -t(0)^{-1} (t(y) - t(0))/y evaluated at z.
  const PolyA& t = t_[L - 1];
  if (is_zero(t.c[0])) throw std::logic_error("zpow: modulus vanishes at 0");
  PolyA shifted{L - 1, std::vector<Elem>(t.c.begin() + 1, t.c.end())};
  Elem zi = embed(pscale(shifted, neg(inv(t.c[0]))));
  return pow(zi, Int(static_cast<long>(-k)));
}

void Tower::trim(PolyA& a) const {
  while (!a.c.empty() && is_zero(a.c.back())) a.c.pop_back();
}

PolyA Tower::pconst(const Elem& a) const {
  PolyA p{a.lvl, {a}};
  trim(p);
  return p;
}

PolyA Tower::pmonomial(const Elem& a, int k) const {
  PolyA p{a.lvl, std::vector<Elem>(k + 1, zero(a.lvl))};
  p.c[k] = a;
  trim(p);
  return p;
}

PolyA Tower::pfrom_ints(int L, const std::vector<Int>& coeffs) const {
  PolyA p{L, {}};
  for (const auto& a : coeffs) p.c.push_back(from_int(L, a));
  trim(p);
  return p;
}

PolyA Tower::padd(const PolyA& a, const PolyA& b) const {
  PolyA r{a.lvl, std::vector<Elem>(std::max(a.c.size(), b.c.size()), zero(a.lvl))};
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = add(r.c[i], b.c[i]);
  trim(r);
  return r;
}

PolyA Tower::psub(const PolyA& a, const PolyA& b) const {
  PolyA r{a.lvl, std::vector<Elem>(std::max(a.c.size(), b.c.size()), zero(a.lvl))};
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = sub(r.c[i], b.c[i]);
  trim(r);
  return r;
}

PolyA Tower::pmul(const PolyA& a, const PolyA& b) const {
  if (a.is_zero() || b.is_zero()) return pzero(a.lvl);
  PolyA r{a.lvl, std::vector<Elem>(a.c.size() + b.c.size() - 1, zero(a.lvl))};
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (is_zero(a.c[i])) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (is_zero(b.c[j])) continue;
      r.c[i + j] = add(r.c[i + j], mul(a.c[i], b.c[j]));
    }
  }
  trim(r);
  return r;
}

PolyA Tower::pscale(const PolyA& a, const Elem& k) const {
  PolyA r = a;
  for (auto& x : r.c) x = mul(x, k);
  trim(r);
  return r;
}

PolyA Tower::pderiv(const PolyA& a) const {
  PolyA r{a.lvl, {}};
  for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(scale(a.c[i], Int(static_cast<unsigned long>(i))));
  trim(r);
  return r;
}

PolyA Tower::plift(const PolyA& a, int L) const {
  PolyA r{L, {}};
  for (const auto& x : a.c) r.c.push_back(lift(x, L));
  return r;
}

Elem Tower::peval(const PolyA& a, const Elem& x) const {
  Elem r = zero(x.lvl);
  for (size_t i = a.c.size(); i-- > 0;) r = add(mul(r, x), lift(a.c[i], x.lvl));
  return r;
}

bool Tower::pis_one(const PolyA& a) const { return a.c.size() == 1 && is_one(a.c[0]); }

PolyA Tower::make_monic(const PolyA& a) const {
  if (a.is_zero()) throw std::invalid_argument("make_monic: zero polynomial");
  if (is_one(a.lc())) return a;
  return pscale(a, inv(a.lc()));
}

std::pair<PolyA, PolyA> Tower::quotrem_monic(const PolyA& s, const PolyA& t) const {
  int L = s.lvl, m = t.deg();
  if (m < 0) throw std::invalid_argument("quotrem: zero divisor polynomial");
  if (s.deg() < m) return {pzero(L), s};
  std::vector<Elem> r = s.c;
  std::vector<Elem> q(s.deg() - m + 1, zero(L));
  if (L == 0) {
    Int tmp;
    for (int k = s.deg(); k >= m; --k) {
      const Int& c = r[k].c[0];
      if (c == 0) continue;
      q[k - m].c[0] = c;
      for (int j = 0; j < m; ++j) {
        const Int& tj = t.c[j].c[0];
        if (tj == 0) continue;
        Int& x = r[k - m + j].c[0];
        mpz_submul(x.get_mpz_t(), c.get_mpz_t(), tj.get_mpz_t());
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), N_.get_mpz_t());
      }
      r[k].c[0] = 0;
    }
  } else {
  for (int k = s.deg(); k >= m; --k) {
    if (is_zero(r[k])) continue;
    Elem c = r[k];
    q[k - m] = c;
    for (int j = 0; j <= m; ++j) {
      if (is_zero(t.c[j])) continue;
      r[k - m + j] = sub(r[k - m + j], mul(c, t.c[j]));
    }
  }
  }
  r.resize(m);
  PolyA Q{L, std::move(q)}, R{L, std::move(r)};
  trim(Q);
  trim(R);
  return {Q, R};
}

std::pair<PolyA, PolyA> Tower::quotrem(const PolyA& s, const PolyA& t) const {
  if (t.is_zero()) throw std::invalid_argument("quotrem: zero divisor polynomial");
  if (is_one(t.lc())) return quotrem_monic(s, t);
  Elem a = inv(t.lc());
  auto [q, r] = quotrem_monic(s, pscale(t, a));
  return {pscale(q, a), r};
}

PolyA Tower::gcd(const PolyA& s0, const PolyA& t0) const {
  if (t0.is_zero()) throw std::invalid_argument("gcd: second argument must be nonzero");
  PolyA s = s0, t = t0;
  if (s.lvl == 0) {
    Int u;
    while (!t.is_zero()) {
      Int& lc = t.c.back().c[0];
      if (lc != 1) {
        if (!mpz_invert(u.get_mpz_t(), lc.get_mpz_t(), N_.get_mpz_t())) raise_n_factor(sfom::gcd(lc, N_));
        for (auto& e : t.c) {
          e.c[0] *= u;
          mpz_mod(e.c[0].get_mpz_t(), e.c[0].get_mpz_t(), N_.get_mpz_t());
        }
      }
      // s <- s mod t in place.
      int m = t.deg();
      for (int k = s.deg(); k >= m; --k) {
        const Int& c = s.c[k].c[0];
        if (c != 0)
          for (int j = 0; j < m; ++j) {
            Int& x = s.c[k - m + j].c[0];
            mpz_submul(x.get_mpz_t(), c.get_mpz_t(), t.c[j].c[0].get_mpz_t());
            mpz_mod(x.get_mpz_t(), x.get_mpz_t(), N_.get_mpz_t());
          }
        s.c.pop_back();
      }
      trim(s);
      std::swap(s, t);
    }
    return s;
  }
  while (!t.is_zero()) {
    t = make_monic(t);
    PolyA r = quotrem_monic(s, t).second;
    s = std::move(t);
    t = std::move(r);
  }
  return s;
}

std::tuple<PolyA, PolyA, PolyA> Tower::xgcd(const PolyA& s0, const PolyA& t0) const {
  if (t0.is_zero()) throw std::invalid_argument("xgcd: second argument must be nonzero");
  int L = s0.lvl;
  PolyA r0 = s0, r1 = t0;
  PolyA u0 = pconst(one(L)), u1 = pzero(L);
  PolyA v0 = pzero(L), v1 = pconst(one(L));
  while (!r1.is_zero()) {
    if (!is_one(r1.lc())) {
      Elem a = inv(r1.lc());
      r1 = pscale(r1, a);
      u1 = pscale(u1, a);
      v1 = pscale(v1, a);
    }
    auto [q, r] = quotrem_monic(r0, r1);
    PolyA u2 = psub(u0, pmul(q, u1));
    PolyA v2 = psub(v0, pmul(q, v1));
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  return {r0, u0, v0};
}

PolyA Tower::exact_divide(const PolyA& t, const PolyA& d) const {
  if (d.is_zero() || !is_one(d.lc())) throw std::invalid_argument("exact_divide: divisor not monic");
  auto [q, r] = quotrem_monic(t, d);
  if (!r.is_zero()) throw NonExactDivision();
  return q;
}

int Tower::ord(const PolyA& a, const PolyA& d) const {
  if (a.is_zero()) throw std::invalid_argument("ord: zero polynomial");
  int k = 0;
  PolyA cur = a;
  while (cur.deg() >= d.deg()) {
    auto [q, r] = quotrem_monic(cur, d);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++k;
  }
  return k;
}

void Tower::require_strongly_unitary(const PolyA& a) const {
  for (const auto& x : a.c)
    if (!is_zero(x)) inv(x);
}

std::vector<std::pair<PolyA, int>> Tower::sfd(const PolyA& f0) const {
  std::vector<std::pair<PolyA, int>> out;
  if (f0.is_zero()) throw std::invalid_argument("sfd: zero polynomial");
  PolyA f = make_monic(f0);
  if (f.deg() == 0) return out;
  PolyA g = exact_divide(f, gcd(f, pderiv(f)));
  int ell = 1;
  while (!pis_one(f)) {
    f = exact_divide(f, g);
    PolyA h = gcd(f, g);
    PolyA s = exact_divide(g, h);
    if (!pis_one(s)) {
      require_strongly_unitary(s);
      out.emplace_back(std::move(s), ell);
    }
    g = std::move(h);
    ++ell;
    if (ell > f0.deg() + 1) throw std::logic_error("sfd: no termination");
  }
  return out;
}

std::string Tower::str(const Elem& a) const {
  if (a.lvl == 0) return a.c[0].get_str();
  std::ostringstream os;
  os << "[";
  auto bl = blocks(a);
  for (size_t i = 0; i < bl.size(); ++i) os << (i ? "," : "") << str(bl[i]);
  os << "]";
  return os.str();
}

std::string Tower::str(const PolyA& a) const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.c.size(); ++i) os << (i ? "," : "") << str(a.c[i]);
  os << ")";
  return os.str();
}

}  // namespace sfom
