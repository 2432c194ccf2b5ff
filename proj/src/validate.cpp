#include "validate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "omprime.hpp"

namespace sfom {

namespace {

using Vec = std::vector<Int>;

Vec padded(const IntPoly& p, int n) {
  Vec v(n, 0);
  for (int i = 0; i <= p.deg() && i < n; ++i) v[i] = p.coeff(i);
  return v;
}

Vec mul(const MulTable& T, const Vec& a, const Vec& b, const Int& p) {
  const size_t n = a.size();
  Vec c(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      Int ab = a[i] * b[j];
      for (size_t k = 0; k < n; ++k)
        if (T[i][j][k] != 0) c[k] += ab * T[i][j][k];
    }
  }
  if (p != 0)
    for (auto& x : c) x = mod_pos(x, p);
  return c;
}

Vec pow_mod(const MulTable& T, const Vec& one, Vec x, const Int& e, const Int& p) {
  Vec r = one;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(T, r, x, p);
    if (i + 1 < bits) x = mul(T, x, x, p);
  }
  return r;
}

// Reduced row echelon form mod p; returns pivot columns.
std::vector<size_t> rref_mod(Matrix& A, const Int& p) {
  std::vector<size_t> pivots;
  if (A.empty()) return pivots;
  const size_t rows = A.size(), cols = A[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && mod_pos(A[piv][c], p) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[r], A[piv]);
    Int inv;
    Int a = mod_pos(A[r][c], p);
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    for (auto& x : A[r]) x = mod_pos(x * inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Int m = mod_pos(A[i][c], p);
      if (m == 0) continue;
      for (size_t k = 0; k < cols; ++k) A[i][k] = mod_pos(A[i][k] - m * A[r][k], p);
    }
    pivots.push_back(c);
    ++r;
  }
  A.resize(r);
  return pivots;
}

// Basis of {x : x M = 0} over F_p.
Matrix left_kernel_mod(const Matrix& M, const Int& p) {
  const size_t n = M.size(), m = M[0].size();
  Matrix A(m, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) A[j][i] = mod_pos(M[i][j], p);
  auto pivots = rref_mod(A, p);
  Matrix ker;
  for (size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Vec x(n, 0);
    x[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = mod_pos(-A[r][free], p);
    ker.push_back(std::move(x));
  }
  return ker;
}

// Solves c B = y for B in HNF (upper triangular); exact.
std::optional<Vec> solve_upper(const Matrix& B, Vec y) {
  const size_t n = B.size();
  Vec c(n);
  for (size_t j = 0; j < n; ++j) {
    if (!mpz_divisible_p(y[j].get_mpz_t(), B[j][j].get_mpz_t())) return std::nullopt;
    c[j] = y[j] / B[j][j];
    if (c[j] != 0)
      for (size_t k = j; k < n; ++k) y[k] -= c[j] * B[j][k];
  }
  return c;
}

Int det_exact(Matrix M) {
  const size_t n = M.size();
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k < n; ++k) {
    if (M[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && M[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

// Power sums of the roots of monic f, p_0 .. p_{count-1}.
Vec power_sums(const IntPoly& f, int count) {
  const int n = f.deg();
  Vec c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = f.coeff(i);
  Vec p(count, 0);
  if (count > 0) p[0] = n;
  for (int k = 1; k < count; ++k) {
    Int s = 0;
    if (k <= n) s += k * c[n - k];
    for (int i = 1; i <= std::min(k - 1, n); ++i) s += c[n - i] * p[k - i];
    p[k] = -s;
  }
  return p;
}

Val e_product(const SFType& ty, int upto) {
  Val e = 1;
  for (int i = 1; i <= upto; ++i) e *= ty.lv[i].e;
  return e;
}

Val f_product(const SFType& ty) {
  Val f = 1;
  for (int i = 0; i <= ty.order(); ++i) f *= ty.f(i);
  return f;
}

std::string str_val(const Int& x) { return x.get_str(); }

}  // namespace

std::optional<MulTable> multiplication_table(const IntegerLattice& L, const IntPoly& f) {
  const int n = L.dim();
  auto nums = L.numerators();
  Int d2 = L.den() * L.den();
  MulTable T(n, std::vector<Vec>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      auto c = L.coordinates(padded(rem_monic(nums[i] * nums[j], f), n), d2);
      if (!c) return std::nullopt;
      T[i][j] = *c;
      T[j][i] = *c;
    }
  return T;
}

bool ring_closed(const IntegerLattice& L, const IntPoly& f) {
  if (!L.coordinates(padded(IntPoly::constant(1), L.dim()), 1)) return false;
  return multiplication_table(L, f).has_value();
}

Int order_discriminant(const IntegerLattice& L, const IntPoly& f) {
  const int n = L.dim();
  Vec ps = power_sums(f, n);
  auto nums = L.numerators();
  Int d2 = L.den() * L.den();
  Matrix M(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      IntPoly pr = rem_monic(nums[i] * nums[j], f);
      Int tr = 0;
      for (int k = 0; k <= pr.deg(); ++k) tr += pr.coeff(k) * ps[k];
      if (!mpz_divisible_p(tr.get_mpz_t(), d2.get_mpz_t())) throw std::logic_error("order_discriminant: non-integral trace");
      M[i][j] = M[j][i] = tr / d2;
    }
  return det_exact(std::move(M));
}

bool index_discriminant_check(const IntegerLattice& L, const IntPoly& f) {
  Int idx = L.index();
  return discriminant(f) == idx * idx * order_discriminant(L, f);
}

bool p_maximal(const IntegerLattice& L, const IntPoly& f, const Int& p) {
  const int n = L.dim();
  auto T = multiplication_table(L, f);
  if (!T) throw std::invalid_argument("p_maximal: lattice is not a ring");
  auto one = L.coordinates(padded(IntPoly::constant(1), n), 1);
  if (!one) throw std::invalid_argument("p_maximal: lattice does not contain 1");

  // Radical of pL: kernel of x -> x^(p^k) on L/pL with p^k >= n.
  Matrix F;
  for (int i = 0; i < n; ++i) {
    Vec x(n, 0);
    x[i] = 1;
    for (Int q = 1; q < n; q *= p) x = pow_mod(*T, *one, x, p, p);
    F.push_back(std::move(x));
  }
  Matrix gens = left_kernel_mod(F, p);
  Matrix I = hnf(gens, n, p);

  // u -> (u * beta_k mod pI)_k; L is p-maximal iff this map is injective.
  Matrix Phi;
  for (int i = 0; i < n; ++i) {
    Vec u(n, 0);
    u[i] = 1;
    Vec row;
    for (const auto& beta : I) {
      auto c = solve_upper(I, mul(*T, u, beta, 0));
      if (!c) throw std::logic_error("p_maximal: radical is not an ideal");
      for (auto& x : *c) row.push_back(mod_pos(x, p));
    }
    Phi.push_back(std::move(row));
  }
  auto piv = rref_mod(Phi, p);
  return static_cast<int>(piv.size()) == n;
}

ProjectReport project_check(const SFOMRep& rep, const Int& p, unsigned long seed) {
  ProjectReport R;
  const Val rho = ord_n(rep.N, p).first;
  if (rho == 0) {
    R.ok = false;
    R.issues.push_back("p does not divide N");
    return R;
  }
  SFOMRep om = om_prime(rep.f, p, seed);
  R.prime_leaves = static_cast<int>(om.leaves.size());
  Tower Fp(p);
  const size_t ns = rep.leaves.size();
  std::vector<size_t> parent(ns);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::vector<size_t>> matches(om.leaves.size());
  Val mass = 0;
  for (size_t a = 0; a < om.leaves.size(); ++a) {
    const SFType& P = om.leaves[a];
    mass += e_product(P, P.order()) * f_product(P);
    std::vector<Int> t0;
    for (const auto& c : P.t(0).c) t0.push_back(c.c[0]);
    for (size_t b = 0; b < ns; ++b) {
      const SFType& S = rep.leaves[b];
      if (S.order() != P.order()) continue;
      bool ok = true;
      for (int i = 1; i <= S.order() && ok; ++i)
        ok = S.lv[i].e == P.lv[i].e && ratio(P.lv[i].h, P.lv[i].e) == ratio(rho * S.lv[i].h, S.lv[i].e);
      if (!ok) continue;
      std::vector<Int> s0;
      for (const auto& c : S.t(0).c) s0.push_back(c.c[0]);
      PolyA sp = Fp.pfrom_ints(0, s0), pp = Fp.pfrom_ints(0, t0);
      if (!Fp.quotrem_monic(sp, pp).second.is_zero()) continue;
      matches[a].push_back(b);
    }
    if (matches[a].empty()) {
      R.ok = false;
      R.issues.push_back("prime leaf " + std::to_string(a) + " lies under no SF leaf");
      continue;
    }
    for (size_t b : matches[a]) parent[find(b)] = find(matches[a][0]);
  }
  if (mass != rep.f.deg()) {
    R.ok = false;
    R.issues.push_back("sum e_P f_P = " + std::to_string(mass));
  }
  std::map<size_t, Val> sf_mass, p_mass;
  for (size_t b = 0; b < ns; ++b) sf_mass[find(b)] += f_product(rep.leaves[b]);
  for (size_t a = 0; a < om.leaves.size(); ++a)
    if (!matches[a].empty()) p_mass[find(matches[a][0])] += f_product(om.leaves[a]);
  for (const auto& [root, m] : sf_mass)
    if (p_mass[root] != m) {
      R.ok = false;
      R.issues.push_back("residue degrees differ: SF " + std::to_string(m) + " vs prime " + std::to_string(p_mass[root]));
    }
  return R;
}

ResultantReport resultant_valuation_check(const IntPoly& f, const IntPoly& g, const SFOMRep& prime_rep) {
  ResultantReport R;
  const Int& p = prime_rep.N;
  R.lhs = 0;
  for (const auto& P : prime_rep.leaves) {
    Analyzer an(P);
    int r = P.order();
    const LevelInfo& I = an.info(r, g);
    if (P.tower.ord(I.R, P.t(r)) > 0) {
      R.applicable = false;
      return R;
    }
    R.lhs += Int(static_cast<long>(f_product(P))) * Int(static_cast<long>(I.v));
  }
  Int res = resultant(f, g);
  if (res == 0) {
    R.applicable = false;
    return R;
  }
  R.rhs = Int(static_cast<long>(ord_n(res, p).first));
  return R;
}

bool rquot_check(const SFType& leaf, const IntPoly& f, std::string* why) {
  Analyzer an(leaf);
  const Tower& A = leaf.tower;
  for (int i = 1; i <= leaf.order(); ++i) {
    const TypeLevel& lv = leaf.lv[i];
    Expansion ex = expand(f, lv.g, static_cast<int>(lv.right.s));
    const PolyA& Rf = lv.residual;
    for (Val s = lv.left.s + 1; s <= lv.right.s; ++s) {
      const IntPoly& q = ex.quotients.at(static_cast<size_t>(s));
      size_t l = 0;
      while (l < Rf.c.size() && (lv.left.s + static_cast<Val>(l) * lv.e < s || A.is_zero(Rf.c[l]))) ++l;
      PolyA expect{Rf.lvl, std::vector<Elem>(Rf.c.begin() + static_cast<long>(l), Rf.c.end())};
      if (an.info(i, q).R != expect) {
        if (why) *why = "level " + std::to_string(i) + " quotient " + std::to_string(s);
        return false;
      }
    }
  }
  return true;
}

bool denquot_check(const SFType& leaf, const IntPoly& f, const Int& N, const Int& p, std::string* why) {
  Analyzer an(leaf);
  const Val rho = ord_n(N, p).first;
  const Int n = f.deg();
  for (int i = 1; i <= leaf.order(); ++i) {
    const TypeLevel& lv = leaf.lv[i];
    const Val E = e_product(leaf, i);
    Expansion ex = expand(f, lv.g, static_cast<int>(lv.right.s));
    for (Val s = lv.left.s + 1; s <= lv.right.s; ++s) {
      const IntPoly& q = ex.quotients.at(static_cast<size_t>(s));
      Val v = an.value(i, q);
      Int res = resultant(f, q);
      Int lhs = Int(static_cast<long>(ord_n(res, p).first)) * E;
      Int rhs = n * rho * v;
      if (lhs < rhs) {
        if (why) *why = "level " + std::to_string(i) + " quotient " + std::to_string(s);
        return false;
      }
    }
  }
  return true;
}

std::vector<CheckResult> verify(const IntPoly& f, const std::vector<Int>& known_primes, const GlobalOptions& opt) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string details) { out.push_back({std::move(name), ok, std::move(details)}); };
  const int n = f.deg();
  GlobalBasis gb = global_basis(f, opt);
  add("global_basis", true, std::to_string(gb.moduli.size()) + " moduli, den " + str_val(gb.merged.den()));
  bool closed = ring_closed(gb.merged, f);
  add("ring_closure", closed, closed ? "closed under multiplication" : "product outside the order");
  if (!closed) return out;
  add("index_discriminant", index_discriminant_check(gb.merged, f), "index " + str_val(gb.merged.index()));

  Int D = abs(gb.D);
  std::vector<Int> primes;
  auto push_prime = [&](const Int& p) {
    if (p > 1 && mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()) && std::find(primes.begin(), primes.end(), p) == primes.end())
      primes.push_back(p);
  };
  for (long p : primes_up_to(n)) push_prime(p);
  for (const auto& p : known_primes) push_prime(p);
  for (const auto& m : gb.moduli)
    if (is_probable_prime(m.N)) push_prime(m.N);
  for (const auto& p : primes) {
    bool ok = p_maximal(gb.merged, f, p);
    add("p_maximal:" + str_val(p), ok, ok ? "maximal" : "enlargeable");
  }

  for (const auto& m : gb.moduli) {
    if (m.prime) continue;
    SplitOutcome so = sfom(f, m.N);
    if (!so.ok()) {
      add("sfom:" + str_val(m.N), false, "modulus split on rerun");
      continue;
    }
    const SFOMRep& rep = *so.rep;
    bool rq = true;
    std::string why;
    for (const auto& l : rep.leaves) rq = rq && rquot_check(l, f, &why);
    add("rquot:" + str_val(m.N), rq, rq ? std::to_string(rep.leaves.size()) + " leaves" : why);
    for (const auto& p : known_primes) {
      if (!mpz_divisible_p(m.N.get_mpz_t(), p.get_mpz_t())) continue;
      bool dq = true;
      for (const auto& l : rep.leaves) dq = dq && denquot_check(l, f, m.N, p, &why);
      add("denquot:" + str_val(m.N) + ":" + str_val(p), dq, dq ? "holds" : why);
      ProjectReport pr = project_check(rep, p, opt.seed);
      std::string det = std::to_string(pr.prime_leaves) + " prime leaves";
      for (const auto& s : pr.issues) det += "; " + s;
      add("project:" + str_val(m.N) + ":" + str_val(p), pr.ok, det);
    }
  }
  return out;
}

std::string verify_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    arr.push_back({{"check", c.check}, {"status", c.ok ? "pass" : "fail"}, {"details", c.details}});
  return arr.dump(2);
}

}  // namespace sfom
