#pragma once

#include <optional>

#include "intarith.hpp"

namespace sfom {

// A proper monic factor of the monic polynomial f over Z, if one exists.
// Uses a degree-pattern sieve over several primes, then Hensel lifting and
// exhaustive recombination of the modular factors.
std::optional<IntPoly> proper_factor(const IntPoly& f, unsigned long seed = 1);
inline bool is_irreducible(const IntPoly& f) { return f.deg() >= 1 && !proper_factor(f); }

}  // namespace sfom
