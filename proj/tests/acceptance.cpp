// Reproduction gate: one line per numbered check, nonzero exit on any failure.
#include <cstdio>

#include "zetterberg/verify.hpp"

int main() {
  auto summary = zetterberg::verify::run_verification(zetterberg::verify::Tier::standard, 4);
  for (const auto& c : summary.checks) {
    std::printf("%s  %2d  %-45s %s  (%.0f ms)\n", c.passed ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str(), c.elapsed_ms);
  }
  std::printf("%s\n", summary.all_passed ? "ALL CHECKS PASSED" : "CHECKS FAILED");
  return summary.all_passed ? 0 : 1;
}
