// Acceptance suite: runs every verification check with its frozen thresholds
// and prints one pass/fail line per check. Nonzero exit on any failure.

#include <cstdio>
#include <iostream>

#include "ccnv/verify.hpp"

int main() {
  const auto results = ccnv::run_verify("all", nullptr);
  int failures = 0;
  double total = 0.0;
  for (const auto& r : results) {
    total += r.seconds;
    std::printf("[%s] %-34s (%s, %.1f s)\n", r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                r.suite.c_str(), r.seconds);
    if (!r.passed()) {
      ++failures;
      std::printf("       details: %s\n", r.details.dump().c_str());
    }
  }
  std::printf("%zu checks, %d failed, %.1f s total\n", results.size(), failures, total);
  return failures == 0 ? 0 : 1;
}
