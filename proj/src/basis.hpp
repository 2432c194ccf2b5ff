#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfom.hpp"

namespace sfom {

// num(theta) / N^den_exp.
struct BasisElement {
  IntPoly num;
  Val den_exp = 0;
  std::string provenance;
};

using Matrix = std::vector<std::vector<Int>>;

// Hermite normal form (upper triangular, positive pivots, reduced above) of the
// row span. A nonzero modulus asserts that the span contains modulus * Z^n.
Matrix hnf(Matrix rows, int n, const Int& modulus = 0);

// Full-rank lattice L = H / den in power-basis coordinates, H in HNF and den minimal.
class IntegerLattice {
public:
  IntegerLattice() = default;
  static IntegerLattice from_rows(int n, const Int& den, Matrix rows, const Int& modulus = 0);
  static IntegerLattice from_elements(int n, const Int& N, const std::vector<BasisElement>& b);
  static IntegerLattice power_basis(int n);

  int dim() const { return n_; }
  const Int& den() const { return den_; }
  const Matrix& hnf() const { return H_; }
  bool operator==(const IntegerLattice& o) const { return n_ == o.n_ && den_ == o.den_ && H_ == o.H_; }
  bool operator!=(const IntegerLattice& o) const { return !(*this == o); }

  // Coordinates of v/d with respect to the rows of H/den, if v/d lies in L.
  std::optional<std::vector<Int>> coordinates(const std::vector<Int>& v, const Int& d) const;
  // [L : Z^n], meaningful when L contains Z^n.
  Int index() const;
  // Basis elements as numerators over den.
  std::vector<IntPoly> numerators() const;

private:
  int n_ = 0;
  Int den_ = 1;
  Matrix H_;
};

IntegerLattice hnf_merge(const std::vector<IntegerLattice>& ls, bool include_power_basis, int n);

// Basis block of the side shared by the given leaves (all of order r >= 1).
std::vector<BasisElement> terminal_basis(const std::vector<const SFType*>& side, const IntPoly& f);
std::vector<BasisElement> terminal_basis(const SFType& leaf, const IntPoly& f);
std::vector<BasisElement> order_zero_basis(const Tower& A, const PolyA& t, const IntPoly& f);

// Groups leaves sharing a side; order-0 leaves form a single group.
std::vector<std::vector<const SFType*>> side_groups(const SFOMRep& rep);

struct NBasisResult {
  bool needs_squarefree = false;
  std::vector<BasisElement> basis;
};
NBasisResult n_integral_basis(const SFOMRep& rep, bool squarefree_known);

struct GlobalOptions {
  unsigned threads = 1;
  unsigned long seed = 1;
};

struct ModulusBasis {
  Int N;
  bool prime = false;  // computed by the classical engine at a small prime
  std::vector<BasisElement> basis;
};

struct GlobalBasis {
  IntPoly f;
  Int D;
  std::vector<ModulusBasis> moduli;
  IntegerLattice merged;
};

GlobalBasis global_basis(const IntPoly& f, const Int& D, const GlobalOptions& opt = {});
GlobalBasis global_basis(const IntPoly& f, const GlobalOptions& opt = {});

std::string basis_json(const GlobalBasis& gb, bool merged_only);

}  // namespace sfom
