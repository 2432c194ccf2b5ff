#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfom/sfom.h"

namespace {

int exit_code(sfom_status s) {
  switch (s) {
    case SFOM_OK: return 0;
    case SFOM_ERR_MALFORMED:
    case SFOM_ERR_MODULUS_SPLIT: return 2;
    case SFOM_ERR_REDUCIBLE: return 3;
    default: return 1;
  }
}

int report(sfom_status s) {
  std::cerr << "sfom: " << sfom_last_error() << "\n";
  return exit_code(s);
}

// --poly accepts a coefficient list, a file holding one, or "-" for stdin.
bool read_poly_text(const std::string& arg, std::string& text) {
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  if (arg.find_first_not_of("+-0123456789, \t") != std::string::npos) {
    std::ifstream in(arg);
    if (!in) return false;
    text.assign(std::istreambuf_iterator<char>(in), {});
    return true;
  }
  text = arg;
  return true;
}

std::string fraction(const std::string& num, long long k) {
  if (k == 0) return num;
  return "(" + num + ")/N^" + std::to_string(k);
}

std::string poly_text(const nlohmann::json& coeffs) {
  std::string s;
  for (size_t i = coeffs.size(); i-- > 0;) {
    std::string c = coeffs[i].get<std::string>();
    if (c == "0") continue;
    bool neg = c[0] == '-';
    if (neg) c = c.substr(1);
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (i == 0 || c != "1") s += c;
    if (i > 0) s += (i == 0 || c != "1" ? "*x" : "x") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s.empty() ? "0" : s;
}

void print_basis_text(const std::string& js) {
  auto j = nlohmann::json::parse(js);
  std::cout << "disc " << j["D"].get<std::string>() << "\n";
  if (j.contains("moduli"))
    for (const auto& m : j["moduli"]) {
      std::cout << "N = " << m["N"].get<std::string>() << "\n";
      for (const auto& b : m["basis"]) std::cout << "  " << fraction(poly_text(b["num"]), b["den_exp"].get<long long>()) << "\n";
    }
  std::cout << "global basis, denominator " << j["global"]["den"].get<std::string>() << "\n";
  for (const auto& row : j["global"]["hnf"]) {
    std::cout << " ";
    for (const auto& x : row) std::cout << " " << x.get<std::string>();
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral bases of number fields via squarefree OM types"};
  app.require_subcommand(1);

  std::string poly_arg, disc, modulus, known_primes;
  unsigned long seed = 1;
  unsigned threads = 1;
  bool json = false, merged_only = false, svg = false, prime = false;
  int level = 1, leaf = 0;

  app.add_option("--poly", poly_arg, "Ascending coefficients a0,a1,...,1; a file; or - for stdin")->required();
  app.add_option("--seed", seed, "Random seed for finite-field factoring");
  app.add_option("--threads", threads, "Worker threads for per-modulus work")->check(CLI::PositiveNumber);

  auto* basis = app.add_subcommand("basis", "Compute an integral basis")->fallthrough();
  basis->add_option("--disc", disc, "Discriminant to use instead of computing it");
  basis->add_flag("--json", json, "Emit JSON");
  basis->add_flag("--merged-only", merged_only, "Only the merged global basis");

  auto* tree = app.add_subcommand("tree", "Type tree for a modulus")->fallthrough();
  tree->add_option("--modulus", modulus, "Modulus N")->required();
  tree->add_flag("--prime", prime, "Use the classical engine (N must be prime)");

  auto* polygon = app.add_subcommand("polygon", "Newton polygon of a leaf")->fallthrough();
  polygon->add_option("--modulus", modulus, "Modulus N")->required();
  polygon->add_option("--level", level, "Level (>= 1)");
  polygon->add_option("--leaf", leaf, "Leaf index");
  polygon->add_flag("--svg", svg, "Emit SVG");

  auto* verify = app.add_subcommand("verify", "Run the validation checks")->fallthrough();
  verify->add_option("--known-primes", known_primes, "Comma-separated primes to check locally");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string text;
  if (!read_poly_text(poly_arg, text)) {
    std::cerr << "sfom: cannot read " << poly_arg << "\n";
    return 2;
  }
  sfom_poly* f = nullptr;
  if (auto s = sfom_poly_parse(text.c_str(), &f); s != SFOM_OK) return report(s);

  auto run = [&]() -> int {
    if (auto s = sfom_poly_check_irreducible(f, seed, nullptr); s != SFOM_OK) return report(s);
    sfom_options opt;
    sfom_options_init(&opt);
    opt.seed = seed;
    opt.threads = threads;
    opt.merged_only = merged_only;
    if (!disc.empty()) opt.disc = disc.c_str();
    if (!known_primes.empty()) opt.known_primes = known_primes.c_str();

    char* out = nullptr;
    sfom_status s = SFOM_OK;
    if (*basis)
      s = sfom_basis_json(f, &opt, &out);
    else if (*tree)
      s = sfom_tree_json(f, modulus.c_str(), prime, seed, &out);
    else if (*polygon)
      s = sfom_polygon(f, modulus.c_str(), level, leaf, svg, &out);
    else
      s = sfom_verify_json(f, &opt, &out);
    if (s != SFOM_OK) return report(s);

    int code = 0;
    if (*basis && !json) {
      print_basis_text(out);
    } else {
      std::string o = out;
      std::cout << o << (o.empty() || o.back() != '\n' ? "\n" : "");
    }
    if (*verify) {
      auto j = nlohmann::json::parse(out);
      for (const auto& c : j)
        if (c["status"] != "pass") code = 1;
    }
    sfom_string_free(out);
    return code;
  };
  int code = run();
  sfom_poly_free(f);
  return code;
}
