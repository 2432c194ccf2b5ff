#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sftypes.hpp"

namespace sfom {

// Factorization of a residual polynomial into (factor, multiplicity) pairs.
using Splitter = std::function<std::vector<std::pair<PolyA, int>>(const Tower&, const PolyA&)>;

struct SFOMRep {
  IntPoly f;
  Int N;
  bool prime = false;  // produced by the classical engine at a prime
  std::vector<std::pair<PolyA, int>> roots;
  std::vector<SFType> leaves;

  bool ramified() const;
};

struct SplitOutcome {
  std::optional<SFOMRep> rep;
  Int n_factor;  // set when rep is empty
  bool ok() const { return rep.has_value(); }
};

struct EngineOptions {
  Splitter split;
  bool prime = false;
  long step_cap = 200000;
};

SplitOutcome run_engine(const IntPoly& f, const Int& N, const EngineOptions& opt);

// SF-OM representation of f with respect to N, or a proper factor of N.
SplitOutcome sfom(const IntPoly& f, const Int& N);

// Leaf mass (e_1...e_r)(f_0...f_r).
Val leaf_degree(const SFType& ty);

std::string tree_json(const SFOMRep& rep);

}  // namespace sfom
