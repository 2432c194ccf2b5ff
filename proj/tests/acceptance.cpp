#include <chrono>
#include <cstdio>
#include <functional>

#include "criteria.hpp"

namespace {

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 = no time limit
  std::function<crit::Outcome()> run;
};

}  // namespace

int main() {
  const Criterion all[] = {
      {1, "quartic over 35: type tree", 1, crit::quartic35_tree},
      {2, "quartic over 35: basis", 1, crit::quartic35_basis},
      {2, "quartic over 10007*10009", 60, crit::quartic_two_primes},
      {3, "tower family over 11", 1, crit::tower_family_11},
      {4, "order-two family over 37*41", 30, crit::order_two_family},
      {5, "robust products", 0, [] { return crit::robust_products(150, 1); }},
      {6, "gcd/sfd over Z/15", 10, [] { return crit::crt_oracle_z15(3); }},
      {7, "quotient residuals and denominators", 0, crit::quotient_checks},
      {8, "random fields maximality", 300, [] { return crit::random_maximality(50); }},
      {9, "local engines agree", 0, [] { return crit::local_engines_agree(20); }},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    crit::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.ok = false;
      o.detail += " (time limit " + std::to_string(static_cast<int>(c.limit_s)) + " s exceeded)";
    }
    if (!o.ok) ++failed;
    std::printf("criterion %d %s: %s [%.2f s] %s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
