#include "intarith.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sfom {

IntPoly::IntPoly(std::vector<Int> c) : c_(std::move(c)) { trim(); }

IntPoly IntPoly::constant(const Int& a) { return IntPoly(std::vector<Int>{a}); }

IntPoly IntPoly::monomial(const Int& a, int k) {
  std::vector<Int> c(k + 1, 0);
  c[k] = a;
  return IntPoly(std::move(c));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int IntPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
  std::vector<Int> r(c_);
  for (auto& a : r) a = -a;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& a) const {
  std::vector<Int> r(c_);
  for (auto& x : r) x *= a;
  return IntPoly(std::move(r));
}

bool IntPoly::operator<(const IntPoly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

IntPoly IntPoly::pow(int k) const {
  IntPoly r = constant(1), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Int> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& x) const {
  Int r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

IntPoly IntPoly::div_exact(const Int& d) const {
  std::vector<Int> r(c_);
  for (auto& a : r) {
    if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()))
      throw std::logic_error("IntPoly::div_exact: not divisible");
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  }
  return IntPoly(std::move(r));
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& a : c_) g = gcd(g, a);
  return g;
}

std::string IntPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Int a = c_[i];
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    Int m = abs(a);
    if (m != 1 || i == 0) os << m.get_str();
    if (i > 0) os << (m != 1 ? "*x" : "x");
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<IntPoly, IntPoly> divrem_monic(const IntPoly& a, const IntPoly& g) {
  if (!g.is_monic()) throw std::invalid_argument("divrem_monic: divisor not monic");
  int m = g.deg();
  if (a.deg() < m) return {IntPoly{}, a};
  std::vector<Int> r(a.coeffs());
  std::vector<Int> q(a.deg() - m + 1, 0);
  const auto& gc = g.coeffs();
  for (int k = a.deg(); k >= m; --k) {
    Int c = r[k];
    if (c == 0) continue;
    q[k - m] = c;
    for (int j = 0; j <= m; ++j) r[k - m + j] -= c * gc[j];
  }
  r.resize(m);
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

IntPoly rem_monic(const IntPoly& a, const IntPoly& g) { return divrem_monic(a, g).second; }

IntPoly mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& f) { return rem_monic(a * b, f); }

std::pair<Val, Int> ord_n(const Int& a, const Int& N) {
  if (a == 0 || N <= 1) throw std::invalid_argument("ord_n: need a != 0 and N > 1");
  Val k = 0;
  Int b = a;
  while (mpz_divisible_p(b.get_mpz_t(), N.get_mpz_t())) {
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), N.get_mpz_t());
    ++k;
  }
  return {k, b};
}

Val ord_n(const IntPoly& a, const Int& N) {
  if (a.is_zero()) return -1;
  Val best = -1;
  for (const auto& c : a.coeffs()) {
    if (c == 0) continue;
    Val k = ord_n(c, N).first;
    if (best < 0 || k < best) best = k;
    if (best == 0) break;
  }
  return best;
}

Int ipow(const Int& a, unsigned long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int mod_pos(const Int& a, const Int& N) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), N.get_mpz_t());
  return r;
}

std::pair<Int, int> perfect_power(const Int& a) {
  if (a < 4) return {a, 1};
  size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  // Try the largest exponents first so the returned base is not itself a power.
  for (size_t k = bits; k >= 2; --k) {
    Int r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) != 0 && r > 1) {
      auto inner = perfect_power(r);
      return {inner.first, static_cast<int>(k) * inner.second};
    }
  }
  return {a, 1};
}

std::vector<Int> coprime_base(const std::vector<Int>& xs) {
  std::vector<Int> base;
  for (const auto& x : xs)
    if (x > 1) base.push_back(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < base.size() && !changed; ++i) {
      for (size_t j = i + 1; j < base.size() && !changed; ++j) {
        Int g = gcd(base[i], base[j]);
        if (g == 1) continue;
        Int a = base[i] / g, b = base[j] / g;
        std::vector<Int> next;
        for (size_t k = 0; k < base.size(); ++k)
          if (k != i && k != j) next.push_back(base[k]);
        for (const Int& y : {a, b, g})
          if (y > 1) next.push_back(y);
        base = std::move(next);
        changed = true;
      }
    }
  }
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

std::vector<Int> coprime_splitting(const Int& d, const Int& N) {
  if (!(d > 1 && d < N) || !mpz_divisible_p(N.get_mpz_t(), d.get_mpz_t()))
    throw std::invalid_argument("coprime_splitting: need 1 < d < N, d | N");
  std::vector<Int> out;
  for (const auto& c : coprime_base({d, N / d})) out.push_back(perfect_power(c).first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr long kTrialBound = 1000;

void add_factor(std::vector<std::pair<Int, int>>& acc, const Int& p, int e) {
  for (auto& [q, k] : acc)
    if (q == p) {
      k += e;
      return;
    }
  acc.emplace_back(p, e);
}

}  // namespace

std::vector<SfdFactor> int_sfd(const Int& N) {
  if (N <= 1) throw std::invalid_argument("int_sfd: need N > 1");
  // Coprime pieces with exponents: small primes by trial division, then the
  // cofactor split into perfect-power base and exponent.
  std::vector<std::pair<Int, int>> pieces;
  Int m = N;
  for (long p : primes_up_to(kTrialBound)) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++e;
    }
    if (e) add_factor(pieces, Int(p), e);
  }
  if (m > 1) {
    auto [b, k] = perfect_power(m);
    add_factor(pieces, b, k);
  }
  std::vector<SfdFactor> out;
  for (auto& [d, e] : pieces) {
    bool merged = false;
    for (auto& f : out)
      if (f.ell == e) {
        f.d *= d;
        merged = true;
      }
    if (!merged) out.push_back({d, e});
  }
  std::sort(out.begin(), out.end(), [](const SfdFactor& a, const SfdFactor& b) { return a.ell < b.ell; });
  return out;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
Int bareiss_det(std::vector<std::vector<Int>> a) {
  size_t n = a.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Int d = a[n - 1][n - 1];
  return sign > 0 ? d : Int(-d);
}

}  // namespace

Int resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  int n = f.deg(), m = g.deg();
  if (n == 0) return ipow(f.lc(), m);
  if (m == 0) return ipow(g.lc(), n);
  int sz = n + m;
  std::vector<std::vector<Int>> S(sz, std::vector<Int>(sz, 0));
  // Rows hold coefficients from the leading term down.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S[i][i + j] = f.coeff(n - j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S[m + i][i + j] = g.coeff(m - j);
  return bareiss_det(std::move(S));
}

Int discriminant(const IntPoly& f) {
  int n = f.deg();
  if (n < 1) throw std::invalid_argument("discriminant: degree < 1");
  Int r = resultant(f, f.derivative());
  r /= f.lc();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2) r = -r;
  return r;
}

bool is_probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  for (long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int cauchy_bound(const IntPoly& f) {
  Int m = 0;
  for (int i = 0; i < f.deg(); ++i) m = std::max(m, Int(abs(f.coeff(i))));
  Int l = abs(f.lc());
  return m / l + 2;
}

}  // namespace sfom
