#pragma once

#include <gmpxx.h>

#include "sfom.hpp"

namespace sfom {

// Irreducible factorization over a finite-field level of a tower with prime N
// and irreducible moduli. Factors are monic, sorted, multiplicities merged.
std::vector<std::pair<PolyA, int>> ff_factor(const Tower& A, const PolyA& f, gmp_randclass& rng);

// Classical OM representation of f at the prime p.
SFOMRep om_prime(const IntPoly& f, const Int& p, unsigned long seed = 1);

}  // namespace sfom
