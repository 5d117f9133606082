#include <cstdio>
#include <cstdlib>
#include <string>

#include "radfact/suites.hpp"

int main(int argc, char** argv) {
  radfact::PropsOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int k = 1; k <= radfact::kCriterionCount; ++k) {
    const auto c = radfact::run_criterion(k, opt);
    std::printf("%s criterion %d: %s -- %s (%.2f s", c.passed ? "PASS" : "FAIL", c.number,
                c.title.c_str(), c.detail.c_str(), c.seconds);
    if (c.limit > 0) std::printf(", limit %.0f s", c.limit);
    std::printf(")\n");
    std::fflush(stdout);
    if (!c.passed) ++failed;
  }
  std::printf("%d/%d criteria passed\n", radfact::kCriterionCount - failed, radfact::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
