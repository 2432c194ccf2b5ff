#pragma once

#include <exception>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intarith.hpp"

namespace sfom {

// Element of A_L. Level 0 is Z/N; level L > 0 stores f_{L-1} blocks of
// level L-1 coordinates, flattened (block k is the coefficient of z_{L-1}^k).
struct Elem {
  int lvl = 0;
  std::vector<Int> c;
  bool operator==(const Elem& o) const { return lvl == o.lvl && c == o.c; }
  bool operator!=(const Elem& o) const { return !(*this == o); }
};

// Polynomial in y over A_lvl, ascending, trailing zeros trimmed.
struct PolyA {
  int lvl = 0;
  std::vector<Elem> c;
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Elem& lc() const { return c.back(); }
  bool operator==(const PolyA& o) const { return lvl == o.lvl && c == o.c; }
  bool operator!=(const PolyA& o) const { return !(*this == o); }
};

// A detected proper factor of a modulus: of N (level -1) or of t_level.
class FactorEvent : public std::exception {
public:
  FactorEvent(Int n_factor) : level(-1), n_factor(std::move(n_factor)) {}
  FactorEvent(int lvl, PolyA t_factor) : level(lvl), t_factor(std::move(t_factor)) {}
  const char* what() const noexcept override { return "factor of a modulus detected"; }

  int level;
  Int n_factor;
  PolyA t_factor;
};

class NonExactDivision : public std::logic_error {
public:
  NonExactDivision() : std::logic_error("non-exact division") {}
};

class Tower {
public:
  Tower() = default;
  explicit Tower(Int N);

  const Int& N() const { return N_; }
  // Number of moduli t_0..t_{r-1}; elements exist at levels 0..length().
  int length() const { return static_cast<int>(t_.size()); }
  const PolyA& modulus(int i) const { return t_.at(i); }
  int f(int i) const { return t_.at(i).deg(); }
  size_t dim(int L) const { return dim_.at(L); }

  // Appends a monic strongly unitary modulus over the top level.
  Tower extend(const PolyA& t) const;
  // Keeps t_0..t_{k-1}.
  Tower truncate(int k) const;
  bool same_prefix(const Tower& o, int k) const;

  Elem zero(int L) const;
  Elem one(int L) const;
  Elem from_int(int L, const Int& a) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const Int& k) const;
  Elem pow(const Elem& a, const Int& k) const;
  // Inverse, or FactorEvent when a gcd with some modulus is not 1.
  Elem inv(const Elem& a) const;
  bool is_unit(const Elem& a) const;

  // Class in A_L of a polynomial over A_{L-1}.
  Elem embed(const PolyA& p) const;
  // Coordinates of a level-L element as a polynomial over A_{L-1}.
  PolyA as_poly(const Elem& a) const;
  // Natural inclusion into a higher level.
  Elem lift(const Elem& a, int L) const;
  // z_{L-1}^k in A_L; negative k allowed.
  Elem zpow(int L, Val k) const;

  PolyA pzero(int L) const { return PolyA{L, {}}; }
  PolyA pconst(const Elem& a) const;
  PolyA pmonomial(const Elem& a, int k) const;
  PolyA pvar(int L) const { return pmonomial(one(L), 1); }
  PolyA pfrom_ints(int L, const std::vector<Int>& coeffs) const;
  PolyA padd(const PolyA& a, const PolyA& b) const;
  PolyA psub(const PolyA& a, const PolyA& b) const;
  PolyA pmul(const PolyA& a, const PolyA& b) const;
  PolyA pscale(const PolyA& a, const Elem& k) const;
  PolyA pderiv(const PolyA& a) const;
  PolyA plift(const PolyA& a, int L) const;
  Elem peval(const PolyA& a, const Elem& x) const;
  bool pis_one(const PolyA& a) const;

  PolyA make_monic(const PolyA& a) const;
  // Division by a monic divisor, no inversions.
  std::pair<PolyA, PolyA> quotrem_monic(const PolyA& s, const PolyA& t) const;
  // Division by a unitary divisor: inverts lc(t) (may raise FactorEvent).
  std::pair<PolyA, PolyA> quotrem(const PolyA& s, const PolyA& t) const;
  PolyA rem_monic(const PolyA& s, const PolyA& t) const { return quotrem_monic(s, t).second; }
  PolyA gcd(const PolyA& s, const PolyA& t) const;
  // (d, u, v) with s*u + t*v = d, d monic.
  std::tuple<PolyA, PolyA, PolyA> xgcd(const PolyA& s, const PolyA& t) const;
  // Squarefree decomposition, increasing exponents, monic strongly unitary factors.
  std::vector<std::pair<PolyA, int>> sfd(const PolyA& f) const;
  PolyA exact_divide(const PolyA& t, const PolyA& d) const;
  // Largest k with d^k | a (d monic, a nonzero).
  int ord(const PolyA& a, const PolyA& d) const;
  // Raises FactorEvent unless every nonzero coefficient is a unit.
  void require_strongly_unitary(const PolyA& a) const;

  [[noreturn]] void raise_n_factor(const Int& g) const;
  [[noreturn]] void raise_t_factor(int i, const PolyA& d) const;

  std::string str(const Elem& a) const;
  std::string str(const PolyA& a) const;

private:
  void reduce_blocks(std::vector<Elem>& prod, int L) const;
  std::vector<Elem> blocks(const Elem& a) const;
  Elem join(int L, const std::vector<Elem>& blocks) const;
  void trim(PolyA& a) const;

  Int N_;
  std::vector<PolyA> t_;
  std::vector<size_t> dim_{1};
};

}  // namespace sfom
