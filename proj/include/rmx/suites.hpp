#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rmx {

struct CheckResult {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

struct SuiteOptions {
  std::uint64_t seed = 20261018;
  int threads = 1;
};

inline constexpr int criterion_count = 12;

// Runs acceptance criterion id (1..12).
CriterionResult run_criterion(int id, const SuiteOptions& opts);

// global: 1 2 7 8 10; local: 3 4 12; specialfn: 9; oracle: 5 6 11.
std::vector<int> suite_criteria(std::string_view suite);

std::string suite_json(std::string_view suite, const std::vector<CriterionResult>& results, const SuiteOptions& opts);

}  // namespace rmx
