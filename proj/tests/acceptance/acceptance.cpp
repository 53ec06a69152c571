// One PASS/FAIL line per acceptance criterion, then the individual checks.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>

#include "rmx/suites.hpp"

int main(int argc, char** argv) {
  rmx::SuiteOptions opts;
  if (const char* t = std::getenv("RMX_THREADS")) opts.threads = std::max(1, std::atoi(t));
  int first = 1, last = rmx::criterion_count;
  if (argc == 2) first = last = std::atoi(argv[1]);

  int failed = 0;
  for (int id = first; id <= last; ++id) {
    rmx::CriterionResult r;
    try {
      r = rmx::run_criterion(id, opts);
    } catch (const std::exception& e) {
      std::printf("Criterion %d: FAIL (exception: %s)\n", id, e.what());
      ++failed;
      continue;
    }
    std::printf("Criterion %d: %s %s (%.1f s)\n", id, r.pass() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    for (const auto& c : r.checks)
      std::printf("    [%s] %s: %.6g (tolerance %.6g)%s%s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value,
                  c.tolerance, c.detail.empty() ? "" : "; ", c.detail.c_str());
    std::fflush(stdout);
    failed += !r.pass();
  }
  std::printf("%d of %d criteria passed\n", last - first + 1 - failed, last - first + 1);
  return failed == 0 ? 0 : 1;
}
