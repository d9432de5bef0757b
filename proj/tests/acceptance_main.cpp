// Runs the acceptance suite and prints one line per criterion.
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "bergman/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int k = 1; k <= bergman::kCriterionCount; ++k) ids.push_back(k);
  }
  int failed = 0;
  for (int id : ids) {
    const bergman::CriterionResult r = bergman::run_criterion(id);
    std::printf("%s  [%.1f s]\n", bergman::format_line(r).c_str(), r.seconds);
    std::fflush(stdout);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(ids.size()) - failed, ids.size());
  return failed == 0 ? 0 : 1;
}
