#include <cstdlib>
#include <iostream>
#include <string>

#include "streamzero/acceptance.hpp"

// Usage: streamzero_acceptance [criterion-id]. Runs all criteria without an argument.
int main(int argc, char** argv) {
  using namespace streamzero;
  std::vector<CriterionResult> results;
  if (argc > 1) {
    results.push_back(run_criterion(std::atoi(argv[1])));
  } else {
    results = run_acceptance();
  }
  int failed = 0;
  for (const auto& r : results) {
    std::cout << format_result(r) << " (" << detail::fmt(r.seconds) << " s)\n";
    failed += r.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
