#include "sfom.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include <json.hpp>

namespace sfom {

namespace {

class Engine {
public:
  Engine(const IntPoly& f, const Int& N, const EngineOptions& opt) : f_(f), N_(N), opt_(opt) {}
  SplitOutcome run();

private:
  SFType finish(SFType ty, int omega) const;
  std::vector<SFType> children(const SFType& base, const TypeLevel& lvl, std::vector<std::pair<PolyA, int>> facs) const;
  std::vector<SFType> branch_step(const SFType& X) const;
  void refine(const SFType& X, const FactorEvent& ev);
  void place(std::vector<SFType> kids);
  void tick();

  IntPoly f_;
  Int N_;
  EngineOptions opt_;
  std::vector<SFType> stack_, leaves_;
  long steps_ = 0;
};

void Engine::tick() {
  if (++steps_ > opt_.step_cap) throw std::logic_error("sfom: iteration cap exceeded");
}

SFType Engine::finish(SFType ty, int omega) const {
  ty.lv.back().omega = omega;
  ty.omega = omega;
  ty.g_next = IntPoly();
  ty.V_next = 0;
  if (omega > 1) {
    ty.g_next = representative(ty);
    ty.V_next = next_V(ty);
  }
  return ty;
}

// Appends each factor as the next modulus. A factor found to split is replaced
// by its two parts, which keep the multiplicity.
std::vector<SFType> Engine::children(const SFType& base, const TypeLevel& lvl,
                                     std::vector<std::pair<PolyA, int>> facs) const {
  const int lev = base.order() + 1;
  std::deque<std::pair<PolyA, int>> work(facs.begin(), facs.end());
  std::vector<SFType> out;
  while (!work.empty()) {
    auto [T, ell] = work.front();
    work.pop_front();
    try {
      SFType c = base;
      c.lv.push_back(lvl);
      c.tower = base.tower.extend(T);
      if (lev > 0) c.tower.inv(T.c[0]);
      out.push_back(finish(std::move(c), ell));
    } catch (const FactorEvent& ev) {
      if (ev.level != lev) throw;
      PolyA psi = base.tower.exact_divide(T, ev.t_factor);
      work.emplace_front(psi, ell);
      work.emplace_front(ev.t_factor, ell);
    }
  }
  return out;
}

std::vector<SFType> Engine::branch_step(const SFType& X) const {
  NewtonResult nr = newton(X, X.omega, f_);
  auto sides = nr.polygon.principal_sides();
  if (sides.empty()) throw std::logic_error("branch_step: empty principal polygon");
  SFType base = X;
  base.g_next = IntPoly();
  base.V_next = 0;
  base.omega = 0;
  std::vector<SFType> out;
  for (const auto& sd : sides) {
    TypeLevel lvl;
    lvl.g = X.g_next;
    lvl.h = sd.h;
    lvl.e = sd.e;
    lvl.V = X.V_next;
    bezout_data(sd.h, sd.e, lvl.ell, lvl.ellp);
    lvl.polygon = nr.polygon;
    std::tie(lvl.left, lvl.right) = nr.polygon.component(sd.h, sd.e);
    lvl.residual = residual(X, nr, sd.h, sd.e);
    auto facs = opt_.split(X.tower, lvl.residual);
    auto kids = children(base, lvl, std::move(facs));
    out.insert(out.end(), kids.begin(), kids.end());
  }
  return out;
}

void Engine::place(std::vector<SFType> kids) {
  // Reverse so the first child is processed first from the stack.
  for (auto it = kids.rbegin(); it != kids.rend(); ++it) (it->omega == 1 ? leaves_ : stack_).push_back(std::move(*it));
}

// X's modulus t_j splits as phi * psi: every type sharing X's truncation at
// level j is rebuilt from the two new order-j types.
void Engine::refine(const SFType& X, const FactorEvent& ev) {
  tick();
  const int j = ev.level;
  auto affected = [&](const SFType& Y) { return Y.same_truncation(X, j); };
  std::erase_if(stack_, affected);
  std::erase_if(leaves_, affected);

  SFType base;
  base.tower = X.tower.truncate(j);
  base.lv.assign(X.lv.begin(), X.lv.begin() + j);
  const TypeLevel& lvl = X.lv[j];
  const PolyA& phi = ev.t_factor;
  PolyA psi = base.tower.exact_divide(X.t(j), phi);
  std::vector<std::pair<PolyA, int>> facs;
  for (const PolyA* part : std::array<const PolyA*, 2>{&phi, &psi}) facs.emplace_back(*part, base.tower.ord(lvl.residual, *part));
  std::vector<SFType> kids;
  try {
    kids = children(base, lvl, std::move(facs));
  } catch (const FactorEvent& e2) {
    if (e2.level < 0) throw;
    if (e2.level >= j) throw std::logic_error("refine: unexpected event level");
    refine(X, e2);
    return;
  }
  place(std::move(kids));
}

SplitOutcome Engine::run() {
  try {
    SFType pre;
    pre.tower = Tower(N_);
    TypeLevel lvl0;
    lvl0.residual = reduce_mod_n(pre.tower, f_);
    place(children(pre, lvl0, opt_.split(pre.tower, lvl0.residual)));

    while (!stack_.empty()) {
      tick();
      SFType X = std::move(stack_.back());
      stack_.pop_back();
      try {
        place(branch_step(X));
      } catch (const FactorEvent& ev) {
        if (ev.level < 0) throw;
        if (opt_.prime) throw std::logic_error("modulus split over a finite field");
        refine(X, ev);
      }
    }
  } catch (const FactorEvent& ev) {
    if (ev.level >= 0) throw std::logic_error("sfom: unabsorbed modulus factor");
    if (opt_.prime) throw std::logic_error("sfom: prime modulus split");
    return SplitOutcome{std::nullopt, ev.n_factor};
  }

  Val mass = 0;
  for (const auto& l : leaves_) mass += leaf_degree(l);
  if (mass != f_.deg()) throw std::logic_error("sfom: leaf degrees do not add up to deg f");

  SFOMRep rep;
  rep.f = f_;
  rep.N = N_;
  rep.prime = opt_.prime;
  rep.leaves = std::move(leaves_);
  for (const auto& l : rep.leaves) {
    std::pair<PolyA, int> root{l.t(0), l.lv[0].omega};
    if (std::find(rep.roots.begin(), rep.roots.end(), root) == rep.roots.end()) rep.roots.push_back(root);
  }
  return SplitOutcome{std::move(rep), 0};
}

nlohmann::ordered_json elem_json(const Tower& A, const Elem& a) {
  if (a.lvl == 0) return a.c[0].get_str();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& b : A.as_poly(a).c) arr.push_back(elem_json(A, b));
  // Keep the trailing zero blocks so every level has f_{L-1} entries.
  while (arr.size() < static_cast<size_t>(A.f(a.lvl - 1))) arr.push_back(elem_json(A, A.zero(a.lvl - 1)));
  return arr;
}

nlohmann::ordered_json poly_json(const IntPoly& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

}  // namespace

bool SFOMRep::ramified() const {
  for (const auto& l : leaves)
    for (size_t i = 1; i < l.lv.size(); ++i)
      if (l.lv[i].e > 1) return true;
  return false;
}

Val leaf_degree(const SFType& ty) {
  Val d = 1;
  for (int i = 0; i <= ty.order(); ++i) d *= ty.f(i) * (i ? ty.lv[i].e : 1);
  return d;
}

SplitOutcome run_engine(const IntPoly& f, const Int& N, const EngineOptions& opt) {
  if (!f.is_monic() || f.deg() < 1) throw std::invalid_argument("sfom: f must be monic of positive degree");
  return Engine(f, N, opt).run();
}

SplitOutcome sfom(const IntPoly& f, const Int& N) {
  EngineOptions opt;
  opt.split = [](const Tower& A, const PolyA& R) { return A.sfd(R); };
  return run_engine(f, N, opt);
}

std::string tree_json(const SFOMRep& rep) {
  nlohmann::ordered_json j;
  j["N"] = rep.N.get_str();
  if (rep.prime) j["prime"] = rep.N.get_str();
  j["f"] = poly_json(rep.f);
  j["ramified"] = rep.ramified();
  nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
  for (const auto& l : rep.leaves) {
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (int i = 0; i <= l.order(); ++i) {
      const auto& L = l.lv[i];
      nlohmann::ordered_json node;
      node["level"] = i;
      nlohmann::ordered_json t = nlohmann::ordered_json::array();
      for (const auto& c : l.t(i).c) t.push_back(elem_json(l.tower, c));
      node["t"] = t;
      node["g"] = i ? poly_json(L.g) : poly_json(lift_order_zero(l.tower, l.t(0)));
      node["lambda"] = {L.h, L.e};
      node["omega"] = L.omega;
      node["V"] = L.V;
      levels.push_back(node);
    }
    leaves.push_back({{"levels", levels}});
  }
  j["leaves"] = leaves;
  return j.dump(2);
}

}  // namespace sfom
