#include <cstdlib>
#include <iostream>
#include <string>

#include "lylab/tools/acceptance.hpp"

// One line per criterion; exit status 1 if any fails. LYLAB_JOBS sets the thread count.
int main() {
  lylab::tools::AcceptanceOptions options;
  if (const char* jobs = std::getenv("LYLAB_JOBS")) options.jobs = std::max(1, std::atoi(jobs));
  int failed = 0;
  for (int id = 1; id <= lylab::tools::kCriteria; ++id) {
    auto r = lylab::tools::run_criterion(id, options);
    std::cout << lylab::tools::format_line(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed ? "FAILED " + std::to_string(failed) : std::string("PASSED")) << " "
            << lylab::tools::kCriteria - failed << "/" << lylab::tools::kCriteria << std::endl;
  return failed ? 1 : 0;
}
