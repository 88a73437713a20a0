#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ccnv {

struct CheckResult {
  std::string name;
  std::string suite;    // trivial | lemmas | solver | bounds | desk
  std::string status;   // pass | fail | degenerate
  double seconds = 0.0;
  nlohmann::json details;

  bool passed() const { return status != "fail"; }
};

// Selector: a suite name, a check name, or "all". Runs with fixed seeds;
// results are deterministic.
std::vector<CheckResult> run_verify(const std::string& selector, std::ostream* progress = nullptr);

std::vector<std::string> verify_selectors();

void write_jsonl(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace ccnv
