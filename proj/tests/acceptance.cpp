// one PASS/FAIL line per acceptance criterion, exit code 1 on any failure
#include <cstdio>
#include <cstdlib>

#include "ncs/suites.hpp"

int main() {
  ncs::RunConfig cfg;
  int failed = 0;
  for (int k = 1; k <= 10; ++k) {
    ncs::CriterionResult r = ncs::run_criterion(k, cfg);
    bool ok = r.pass();
    std::printf("%s criterion %d: %s (%.2fs, budget %.0fs)\n", ok ? "PASS" : "FAIL", k, r.title.c_str(), r.seconds,
                r.budget);
    for (const auto& c : r.checks)
      if (!c.pass || std::getenv("NCS_VERBOSE"))
        std::printf("    %-44s residual %.3e  tol %.1e  %s\n", c.id.c_str(), c.residual, c.tolerance, c.note.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed ? 1 : 0;
}
