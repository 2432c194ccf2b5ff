#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "basis.hpp"

namespace fx {

using namespace sfom;

inline IntPoly poly(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.push_back(x);
  return IntPoly(std::move(v));
}

inline IntPoly poly_from_json(const nlohmann::json& a) {
  std::vector<Int> v;
  for (const auto& s : a) v.push_back(Int(s.get<std::string>()));
  return IntPoly(std::move(v));
}

inline PolyA pa(const Tower& A, std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.push_back(x);
  return A.pfrom_ints(0, v);
}

inline IntPoly X() { return IntPoly::x(); }
inline IntPoly C(const Int& a) { return IntPoly::constant(a); }

// x^4 + 2N x^2 + N^3(N-1) x + N^2
inline IntPoly ex1(const Int& N) {
  return X().pow(4) + C(2 * N) * X().pow(2) + C(N * N * N * (N - 1)) * X() + C(N * N);
}

// (x^2 + p)(x^2 + 2p)...(x^2 + rp) + p^m
inline IntPoly ex2(long p, int r, int m) {
  IntPoly f = C(1);
  for (int k = 1; k <= r; ++k) f *= X().pow(2) + C(p * k);
  return f + C(ipow(p, m));
}

// phi^{3r} + sum_k a_{r-k} N^{E_k} x^{2[k odd]} phi^{3(r-k)}, phi = x^4 + N^2(N-1),
// where (x-1)...(x-r) = sum a_i x^i, E_k = 7k for even k and 7k-1 for odd k.
inline IntPoly ex3(int r, const Int& N) {
  IntPoly a = C(1);
  for (int i = 1; i <= r; ++i) a *= X() - C(i);
  IntPoly phi = X().pow(4) + C(N * N * (N - 1));
  IntPoly f = phi.pow(3 * r);
  for (int k = 1; k <= r; ++k) {
    unsigned long E = k % 2 ? 7 * k - 1 : 7 * k;
    IntPoly term = C(a.coeff(r - k) * ipow(N, E)) * phi.pow(3 * (r - k));
    if (k % 2) term *= X().pow(2);
    f += term;
  }
  return f;
}

// Lattice spanned by num_i / N^{k_i}.
inline IntegerLattice lattice(int n, const Int& N, const std::vector<std::pair<IntPoly, int>>& elems) {
  std::vector<BasisElement> b;
  for (const auto& [num, k] : elems) b.push_back({num, k, ""});
  return IntegerLattice::from_elements(n, N, b);
}

inline nlohmann::json load_fixtures() {
  std::ifstream in(std::string(SFOM_FIXTURE_DIR) + "/random_fields.json");
  return nlohmann::json::parse(in);
}

inline std::vector<Int> primes_of(const nlohmann::json& rec) {
  std::vector<Int> out;
  for (const auto& s : rec["disc_primes"]) out.emplace_back(s.get<std::string>());
  return out;
}

}  // namespace fx
