#include "dms/cli/acceptance.hpp"

#include <iostream>

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "acceptance_artifacts";
  const auto results = dms::cli::run_acceptance(dir, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
