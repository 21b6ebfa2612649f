#include <cstdio>

#include "regpet/validation.hpp"

int main() {
  regpet::ValidationOptions opt;
  int failed = 0;
  for (auto& [id, fn] : regpet::all_criteria()) {
    auto r = regpet::run_criterion(id, fn, opt);
    std::printf("%s %s %s [%.1fs]\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.summary.c_str(), r.seconds);
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
