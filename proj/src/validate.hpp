#pragma once

#include <optional>
#include <string>
#include <vector>

#include "basis.hpp"

namespace sfom {

struct CheckResult {
  std::string check;
  bool ok = false;
  std::string details;
};

// table[i][j] = coordinates of w_i * w_j in the basis w of L; empty if L is not a ring.
using MulTable = std::vector<std::vector<std::vector<Int>>>;
std::optional<MulTable> multiplication_table(const IntegerLattice& L, const IntPoly& f);
bool ring_closed(const IntegerLattice& L, const IntPoly& f);

// det(Tr(w_i w_j)) for a lattice closed under multiplication.
Int order_discriminant(const IntegerLattice& L, const IntPoly& f);
// disc(f) = [L : Z[theta]]^2 * disc(L).
bool index_discriminant_check(const IntegerLattice& L, const IntPoly& f);

// Round-2 test: L is p-maximal iff the multiplier ring of its p-radical is L.
bool p_maximal(const IntegerLattice& L, const IntPoly& f, const Int& p);

struct ProjectReport {
  bool ok = true;
  int prime_leaves = 0;
  std::vector<std::string> issues;
};
ProjectReport project_check(const SFOMRep& rep, const Int& p, unsigned long seed = 1);

struct ResultantReport {
  bool applicable = true;
  Int lhs, rhs;
  bool ok() const { return applicable && lhs == rhs; }
};
// sum_P f_P v_P(g) against ord_p Res(f, g), using the leaves of a prime representation.
ResultantReport resultant_valuation_check(const IntPoly& f, const IntPoly& g, const SFOMRep& prime_rep);

// Residual of every quotient is the matching suffix of the residual of f.
bool rquot_check(const SFType& leaf, const IntPoly& f, std::string* why = nullptr);
// ord_p Res(f, q_s) >= n * rho * H_s for every quotient of every level.
bool denquot_check(const SFType& leaf, const IntPoly& f, const Int& N, const Int& p, std::string* why = nullptr);

std::vector<CheckResult> verify(const IntPoly& f, const std::vector<Int>& known_primes, const GlobalOptions& opt = {});
std::string verify_json(const std::vector<CheckResult>& checks);

}  // namespace sfom
