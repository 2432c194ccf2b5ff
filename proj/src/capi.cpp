#include "sfom/sfom.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "basis.hpp"
#include "irreducible.hpp"
#include "omprime.hpp"
#include "sfom.hpp"
#ifdef SFOM_WITH_VALIDATION
#include "validate.hpp"
#endif

struct sfom_poly {
  sfom::IntPoly f;
};

namespace {

thread_local std::string last_error;

sfom_status fail(sfom_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

bool parse_int(std::string tok, sfom::Int& out) {
  size_t a = tok.find_first_not_of(" \t\r\n"), b = tok.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return false;
  tok = tok.substr(a, b - a + 1);
  if (tok[0] == '+') tok = tok.substr(1);
  if (tok.empty() || tok.find_first_not_of("-0123456789") != std::string::npos) return false;
  return out.set_str(tok, 10) == 0;
}

bool parse_list(const char* text, std::vector<sfom::Int>& out) {
  std::stringstream ss(text ? text : "");
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    sfom::Int x;
    if (!parse_int(tok, x)) return false;
    out.push_back(x);
  }
  return !out.empty();
}

sfom_status parse_modulus(const char* s, sfom::Int& N) {
  if (!s || !parse_int(s, N) || N < 2) return fail(SFOM_ERR_MALFORMED, "modulus must be an integer >= 2");
  return SFOM_OK;
}

template <class F>
sfom_status guarded(F&& body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    return fail(SFOM_ERR_MALFORMED, e.what());
  } catch (const std::exception& e) {
    return fail(SFOM_ERR_INTERNAL, e.what());
  }
}

sfom::GlobalOptions global_opts(const sfom_options* opt) {
  sfom::GlobalOptions g;
  if (opt) {
    g.seed = opt->seed;
    g.threads = opt->threads ? opt->threads : 1;
  }
  return g;
}

}  // namespace

extern "C" {

void sfom_options_init(sfom_options* opt) {
  opt->disc = nullptr;
  opt->known_primes = nullptr;
  opt->seed = 1;
  opt->threads = 1;
  opt->merged_only = 0;
}

sfom_status sfom_poly_parse(const char* text, sfom_poly** out) {
  return guarded([&] {
    std::vector<sfom::Int> c;
    if (!parse_list(text, c)) return fail(SFOM_ERR_MALFORMED, "expected comma-separated integer coefficients");
    sfom::IntPoly f(std::move(c));
    if (f.deg() < 1) return fail(SFOM_ERR_MALFORMED, "polynomial must have degree >= 1");
    if (!f.is_monic()) return fail(SFOM_ERR_MALFORMED, "polynomial must be monic");
    *out = new sfom_poly{std::move(f)};
    return SFOM_OK;
  });
}

void sfom_poly_free(sfom_poly* f) { delete f; }

int sfom_poly_degree(const sfom_poly* f) { return f ? f->f.deg() : -1; }

sfom_status sfom_poly_check_irreducible(const sfom_poly* f, unsigned long seed, char** factor) {
  return guarded([&] {
    auto g = sfom::proper_factor(f->f, seed);
    if (!g) return SFOM_OK;
    if (factor) *factor = dup(g->str());
    return fail(SFOM_ERR_REDUCIBLE, "polynomial is reducible, factor " + g->str());
  });
}

sfom_status sfom_basis_json(const sfom_poly* f, const sfom_options* opt, char** out) {
  return guarded([&] {
    sfom::GlobalBasis gb;
    if (opt && opt->disc) {
      sfom::Int D;
      if (!parse_int(opt->disc, D) || D == 0) return fail(SFOM_ERR_MALFORMED, "discriminant must be a nonzero integer");
      gb = sfom::global_basis(f->f, D, global_opts(opt));
    } else {
      gb = sfom::global_basis(f->f, global_opts(opt));
    }
    *out = dup(sfom::basis_json(gb, opt && opt->merged_only));
    return SFOM_OK;
  });
}

sfom_status sfom_tree_json(const sfom_poly* f, const char* modulus, int prime, unsigned long seed, char** out) {
  return guarded([&] {
    sfom::Int N;
    if (auto s = parse_modulus(modulus, N); s != SFOM_OK) return s;
    if (prime) {
      if (!sfom::is_probable_prime(N)) return fail(SFOM_ERR_MALFORMED, "modulus is not prime");
      *out = dup(sfom::tree_json(sfom::om_prime(f->f, N, seed)));
      return SFOM_OK;
    }
    auto so = sfom::sfom(f->f, N);
    if (!so.ok()) return fail(SFOM_ERR_MODULUS_SPLIT, "modulus splits: factor " + so.n_factor.get_str());
    *out = dup(sfom::tree_json(*so.rep));
    return SFOM_OK;
  });
}

sfom_status sfom_polygon(const sfom_poly* f, const char* modulus, int level, int leaf, int svg, char** out) {
  return guarded([&] {
    sfom::Int N;
    if (auto s = parse_modulus(modulus, N); s != SFOM_OK) return s;
    auto so = sfom::sfom(f->f, N);
    if (!so.ok()) return fail(SFOM_ERR_MODULUS_SPLIT, "modulus splits: factor " + so.n_factor.get_str());
    const auto& leaves = so.rep->leaves;
    if (leaf < 0 || static_cast<size_t>(leaf) >= leaves.size())
      return fail(SFOM_ERR_MALFORMED, "leaf index out of range (" + std::to_string(leaves.size()) + " leaves)");
    const auto& ty = leaves[leaf];
    if (level < 1 || level > ty.order())
      return fail(SFOM_ERR_MALFORMED, "level out of range (leaf order " + std::to_string(ty.order()) + ")");
    const auto& np = ty.lv[level].polygon;
    *out = dup(svg ? sfom::polygon_svg(np) : sfom::polygon_dump(np));
    return SFOM_OK;
  });
}

sfom_status sfom_verify_json(const sfom_poly* f, const sfom_options* opt, char** out) {
#ifdef SFOM_WITH_VALIDATION
  return guarded([&] {
    std::vector<sfom::Int> primes;
    if (opt && opt->known_primes && *opt->known_primes && !parse_list(opt->known_primes, primes))
      return fail(SFOM_ERR_MALFORMED, "known primes must be comma-separated integers");
    auto checks = sfom::verify(f->f, primes, global_opts(opt));
    *out = dup(sfom::verify_json(checks));
    return SFOM_OK;
  });
#else
  (void)f;
  (void)opt;
  (void)out;
  return fail(SFOM_ERR_NOT_SUPPORTED, "built without validation support");
#endif
}

void sfom_string_free(char* s) { std::free(s); }

const char* sfom_last_error(void) { return last_error.c_str(); }

}  // extern "C"
