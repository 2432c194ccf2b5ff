#include "basis.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <set>

#include <json.hpp>

#include "omprime.hpp"

namespace sfom {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::vector<Int> padded(const IntPoly& p, int n) {
  std::vector<Int> v(n, 0);
  for (int i = 0; i <= p.deg(); ++i) v[i] = p.coeff(i);
  return v;
}

Int bareiss_det(Matrix M) {
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
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        M[i][j] = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

bool same_side(const SFType& a, const SFType& b) {
  int r = a.order();
  if (r != b.order()) return false;
  if (r == 0) return true;
  return a.same_truncation(b, r - 1) && a.lv[r].g == b.lv[r].g && a.lv[r].h == b.lv[r].h && a.lv[r].e == b.lv[r].e;
}

}  // namespace

Matrix hnf(Matrix rows, int n, const Int& modulus) {
  if (modulus != 0) {
    for (auto& r : rows)
      for (auto& x : r) x = mod_pos(x, modulus);
    for (int k = 0; k < n; ++k) {
      std::vector<Int> e(n, 0);
      e[k] = modulus;
      rows.push_back(std::move(e));
    }
  }
  Matrix H;
  std::vector<std::vector<Int>> active = std::move(rows);
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (size_t i = 0; i < active.size(); ++i)
      if (active[i][j] != 0) {
        piv = static_cast<int>(i);
        break;
      }
    if (piv < 0) throw std::invalid_argument("hnf: lattice is not of full rank");
    std::vector<Int> P = std::move(active[piv]);
    active.erase(active.begin() + piv);
    for (auto& r : active) {
      if (r[j] == 0) continue;
      Int g, a, b;
      mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), P[j].get_mpz_t(), r[j].get_mpz_t());
      Int rp = r[j] / g, pp = P[j] / g;
      for (int k = j; k < n; ++k) {
        Int np = a * P[k] + b * r[k];
        Int nr = rp * P[k] - pp * r[k];
        if (modulus != 0 && k > j) {
          np = mod_pos(np, modulus);
          nr = mod_pos(nr, modulus);
        }
        P[k] = std::move(np);
        r[k] = std::move(nr);
      }
    }
    if (P[j] < 0)
      for (auto& x : P) x = -x;
    std::erase_if(active, [](const std::vector<Int>& r) {
      return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
    });
    H.push_back(std::move(P));
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      Int q = floor_div(H[i][j], H[j][j]);
      if (q == 0) continue;
      for (int k = j; k < n; ++k) H[i][k] -= q * H[j][k];
    }
  return H;
}

IntegerLattice IntegerLattice::from_rows(int n, const Int& den, Matrix rows, const Int& modulus) {
  IntegerLattice L;
  L.n_ = n;
  Int mod = modulus;
  if (mod == 0 && static_cast<int>(rows.size()) == n) mod = abs(bareiss_det(rows));
  L.H_ = sfom::hnf(std::move(rows), n, mod);
  Int g = den;
  for (const auto& r : L.H_)
    for (const auto& x : r) g = gcd(g, x);
  L.den_ = den / g;
  for (auto& r : L.H_)
    for (auto& x : r) x /= g;
  return L;
}

IntegerLattice IntegerLattice::from_elements(int n, const Int& N, const std::vector<BasisElement>& b) {
  Val kmax = 0;
  for (const auto& e : b) kmax = std::max(kmax, e.den_exp);
  Matrix rows;
  for (const auto& e : b) {
    auto v = padded(e.num, n);
    Int s = ipow(N, static_cast<unsigned long>(kmax - e.den_exp));
    for (auto& x : v) x *= s;
    rows.push_back(std::move(v));
  }
  return from_rows(n, ipow(N, static_cast<unsigned long>(kmax)), std::move(rows));
}

IntegerLattice IntegerLattice::power_basis(int n) {
  IntegerLattice L;
  L.n_ = n;
  L.den_ = 1;
  L.H_.assign(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) L.H_[i][i] = 1;
  return L;
}

std::optional<std::vector<Int>> IntegerLattice::coordinates(const std::vector<Int>& v, const Int& d) const {
  std::vector<Int> w(n_);
  for (int i = 0; i < n_; ++i) {
    Int t = v[i] * den_;
    if (!mpz_divisible_p(t.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    w[i] = t / d;
  }
  std::vector<Int> c(n_);
  for (int j = 0; j < n_; ++j) {
    if (!mpz_divisible_p(w[j].get_mpz_t(), H_[j][j].get_mpz_t())) return std::nullopt;
    c[j] = w[j] / H_[j][j];
    if (c[j] != 0)
      for (int k = j; k < n_; ++k) w[k] -= c[j] * H_[j][k];
  }
  return c;
}

Int IntegerLattice::index() const {
  Int det = 1;
  for (int i = 0; i < n_; ++i) det *= H_[i][i];
  return ipow(den_, n_) / det;
}

std::vector<IntPoly> IntegerLattice::numerators() const {
  std::vector<IntPoly> out;
  for (const auto& r : H_) out.emplace_back(r);
  return out;
}

IntegerLattice hnf_merge(const std::vector<IntegerLattice>& ls, bool include_power_basis, int n) {
  Int D = 1;
  for (const auto& L : ls) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), L.den().get_mpz_t());
  Matrix rows;
  for (const auto& L : ls) {
    Int s = D / L.den();
    for (const auto& r : L.hnf()) {
      std::vector<Int> v = r;
      for (auto& x : v) x *= s;
      rows.push_back(std::move(v));
    }
  }
  return IntegerLattice::from_rows(n, D, std::move(rows), include_power_basis ? D : Int(0));
}

std::vector<BasisElement> terminal_basis(const std::vector<const SFType*>& side, const IntPoly& f) {
  const SFType& T = *side.front();
  const int r = T.order();
  if (r < 1) throw std::invalid_argument("terminal_basis: leaf of order 0");
  Analyzer an(T);

  // quot[i][j] = q_{i,j}, H[i][j] its normalized value; level 0 holds theta^j.
  std::vector<std::vector<IntPoly>> quot(r + 1);
  std::vector<std::vector<Rational>> H(r + 1);
  for (int j = 0; j < T.f(0); ++j) {
    quot[0].push_back(IntPoly::monomial(1, j));
    H[0].push_back(0);
  }
  Val E = 1;
  for (int i = 1; i <= r; ++i) {
    const TypeLevel& lv = T.lv[i];
    E *= lv.e;
    Val fi = 0;
    if (i < r)
      fi = T.f(i);
    else
      for (const SFType* l : side) fi += l->f(r);
    Val sd = lv.right.s;
    Expansion ex = expand(f, lv.g, static_cast<int>(sd));
    for (Val j = 0; j < lv.e * fi; ++j) {
      const IntPoly& q = ex.quotients.at(static_cast<size_t>(sd - j));
      quot[i].push_back(q);
      H[i].push_back(ratio(an.value(i, q), E));
    }
  }

  std::vector<BasisElement> out;
  std::vector<size_t> idx(r + 1, 0);
  for (;;) {
    IntPoly num = IntPoly::constant(1);
    Rational h = 0;
    std::string prov = "leaf:";
    for (int i = 0; i <= r; ++i) {
      num = rem_monic(num * quot[i][idx[i]], f);
      h += H[i][idx[i]];
      prov += (i ? "," : "") + std::to_string(idx[i]);
    }
    Int fl = floor_div(h.get_num(), h.get_den());
    out.push_back(BasisElement{num, fl.get_si(), prov});
    int i = 0;
    while (i <= r && ++idx[i] == quot[i].size()) idx[i++] = 0;
    if (i > r) break;
  }
  return out;
}

std::vector<BasisElement> terminal_basis(const SFType& leaf, const IntPoly& f) { return terminal_basis({&leaf}, f); }

std::vector<BasisElement> order_zero_basis(const Tower& A, const PolyA& t, const IntPoly& f) {
  IntPoly g = lift_order_zero(A, t);
  IntPoly q = divrem_monic(f, g).first;
  std::vector<BasisElement> out;
  for (int k = 0; k < t.deg(); ++k) out.push_back(BasisElement{q * IntPoly::monomial(1, k), 0, "order0:" + std::to_string(k)});
  return out;
}

std::vector<std::vector<const SFType*>> side_groups(const SFOMRep& rep) {
  std::vector<std::vector<const SFType*>> groups;
  for (const auto& l : rep.leaves) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return same_side(*g.front(), l); });
    if (it != groups.end())
      it->push_back(&l);
    else
      groups.push_back({&l});
  }
  return groups;
}

NBasisResult n_integral_basis(const SFOMRep& rep, bool squarefree_known) {
  NBasisResult res;
  if (rep.ramified() && !squarefree_known) {
    res.needs_squarefree = true;
    return res;
  }
  for (const auto& grp : side_groups(rep)) {
    if (grp.front()->order() == 0) {
      const Tower& A = grp.front()->tower;
      PolyA t = A.pconst(A.one(0));
      for (const SFType* l : grp) t = A.pmul(t, l->t(0));
      auto b = order_zero_basis(A, t, rep.f);
      res.basis.insert(res.basis.end(), b.begin(), b.end());
    } else {
      auto b = terminal_basis(grp, rep.f);
      res.basis.insert(res.basis.end(), b.begin(), b.end());
    }
  }
  if (static_cast<int>(res.basis.size()) != rep.f.deg()) throw std::logic_error("n_integral_basis: wrong number of elements");
  return res;
}

namespace {

struct ModulusResult {
  Int N;
  std::vector<Int> requeue;
  std::optional<ModulusBasis> basis;
  bool squarefree = false;
};

ModulusResult process_modulus(const IntPoly& f, const Int& N, bool squarefree_known) {
  ModulusResult res;
  res.N = N;
  SplitOutcome out = sfom(f, N);
  if (!out.ok()) {
    res.requeue = coprime_splitting(out.n_factor, N);
    return res;
  }
  const SFOMRep& rep = *out.rep;
  if (rep.ramified() && !squarefree_known) {
    auto sf = int_sfd(N);
    if (sf.size() > 1) {
      for (const auto& x : sf) res.requeue.push_back(x.d);
      res.squarefree = true;
      return res;
    }
    if (sf.front().ell > 1) {
      // Only the prime support of N matters: continue with its radical.
      res.requeue.push_back(sf.front().d);
      res.squarefree = true;
      return res;
    }
    squarefree_known = true;
  }
  NBasisResult nb = n_integral_basis(rep, squarefree_known);
  res.basis = ModulusBasis{N, false, std::move(nb.basis)};
  return res;
}

}  // namespace

GlobalBasis global_basis(const IntPoly& f, const Int& D0, const GlobalOptions& opt) {
  if (!f.is_monic() || f.deg() < 2) throw std::invalid_argument("global_basis: f must be monic of degree > 1");
  if (D0 == 0) throw std::invalid_argument("global_basis: D must be nonzero");
  const int n = f.deg();
  GlobalBasis gb;
  gb.f = f;
  gb.D = D0;
  Int D = abs(D0);

  for (long p : primes_up_to(n)) {
    auto [k, rest] = ord_n(D, Int(p));
    if (k == 0) continue;
    D = rest;
    if (k > 1) {
      SFOMRep rep = om_prime(f, p, opt.seed);
      gb.moduli.push_back(ModulusBasis{p, true, n_integral_basis(rep, true).basis});
    }
  }

  std::deque<std::pair<Int, bool>> work;
  if (D > 1) work.emplace_back(D, false);
  std::set<Int> squarefree;
  const unsigned threads = std::max(1u, opt.threads);
  while (!work.empty()) {
    std::vector<std::pair<Int, bool>> batch;
    while (!work.empty() && batch.size() < threads) {
      batch.push_back(work.front());
      work.pop_front();
    }
    std::vector<ModulusResult> results;
    if (batch.size() == 1) {
      results.push_back(process_modulus(f, batch[0].first, batch[0].second));
    } else {
      std::vector<std::future<ModulusResult>> futs;
      for (const auto& [N, sq] : batch) futs.push_back(std::async(std::launch::async, process_modulus, std::cref(f), N, sq));
      for (auto& fu : futs) results.push_back(fu.get());
    }
    for (auto& r : results) {
      for (const auto& d : r.requeue)
        if (d > 1) work.emplace_back(d, r.squarefree);
      if (r.basis) gb.moduli.push_back(std::move(*r.basis));
    }
  }
  std::sort(gb.moduli.begin(), gb.moduli.end(), [](const ModulusBasis& a, const ModulusBasis& b) { return a.N < b.N; });

  std::vector<IntegerLattice> ls;
  for (const auto& m : gb.moduli) ls.push_back(IntegerLattice::from_elements(n, m.N, m.basis));
  gb.merged = hnf_merge(ls, true, n);
  return gb;
}

GlobalBasis global_basis(const IntPoly& f, const GlobalOptions& opt) { return global_basis(f, discriminant(f), opt); }

std::string basis_json(const GlobalBasis& gb, bool merged_only) {
  using J = nlohmann::ordered_json;
  auto ints = [](const std::vector<Int>& v) {
    J a = J::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
  };
  J j;
  j["f"] = ints(gb.f.coeffs());
  j["D"] = gb.D.get_str();
  if (!merged_only) {
    J mods = J::array();
    for (const auto& m : gb.moduli) {
      J b = J::array();
      for (const auto& e : m.basis) b.push_back(J{{"num", ints(e.num.coeffs())}, {"den_exp", e.den_exp}});
      mods.push_back(J{{"N", m.N.get_str()}, {"basis", b}});
    }
    j["moduli"] = mods;
  }
  J h = J::array();
  for (const auto& r : gb.merged.hnf()) h.push_back(ints(r));
  j["global"] = J{{"den", gb.merged.den().get_str()}, {"hnf", h}};
  return j.dump(2);
}

}  // namespace sfom
