#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sfom {

using Int = mpz_class;
using Rational = mpq_class;

// Valuation-sized integers (ord values, polygon abscissas, V_i, h_i, e_i).
using Val = std::int64_t;

// a/b in canonical form; mpq_class(a, b) does not reduce.
inline Rational ratio(const Int& a, const Int& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

// Dense integer polynomial, ascending coefficients, no trailing zeros.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> c);
  static IntPoly constant(const Int& a);
  static IntPoly monomial(const Int& a, int k);
  static IntPoly x() { return monomial(1, 1); }

  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const Int& lc() const { return c_.back(); }
  Int coeff(int k) const;
  const std::vector<Int>& coeffs() const { return c_; }
  size_t size() const { return c_.size(); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& a) const;
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }
  bool operator<(const IntPoly& o) const;

  IntPoly pow(int k) const;
  IntPoly derivative() const;
  Int eval(const Int& x) const;
  // Exact division by an integer; throws if not exact.
  IntPoly div_exact(const Int& d) const;
  Int content() const;
  std::string str() const;

private:
  void trim();
  std::vector<Int> c_;
};

// Division with remainder by a monic polynomial.
std::pair<IntPoly, IntPoly> divrem_monic(const IntPoly& a, const IntPoly& g);
IntPoly rem_monic(const IntPoly& a, const IntPoly& g);
IntPoly mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& f);

// a = N^k * b with N not dividing b.
std::pair<Val, Int> ord_n(const Int& a, const Int& N);
// Minimal ord_N over the coefficients; -1 for the zero polynomial.
Val ord_n(const IntPoly& a, const Int& N);

Int gcd(const Int& a, const Int& b);
Int ipow(const Int& a, unsigned long k);
Int mod_pos(const Int& a, const Int& N);

// Largest k with a = b^k; returns (b, k), k = 1 when a is not a perfect power.
std::pair<Int, int> perfect_power(const Int& a);

// Pairwise coprime basis of the multiplicative span of the inputs (values > 1).
std::vector<Int> coprime_base(const std::vector<Int>& xs);
std::vector<Int> coprime_splitting(const Int& d, const Int& N);

struct SfdFactor {
  Int d;
  int ell;
};
std::vector<SfdFactor> int_sfd(const Int& N);

Int resultant(const IntPoly& f, const IntPoly& g);
Int discriminant(const IntPoly& f);

bool is_probable_prime(const Int& n);
std::vector<long> primes_up_to(long bound);
Int next_prime(const Int& n);

// Bound on the absolute value of integer roots of f.
Int cauchy_bound(const IntPoly& f);

}  // namespace sfom
