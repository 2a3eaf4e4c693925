#pragma once

#include <string>
#include <vector>

namespace specden {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the acceptance criteria. quick mode trims only Monte Carlo trial
// counts; closed-form criteria are identical in both budgets. All seeds are
// fixed internally and results are independent of the thread count.
std::vector<CriterionResult> run_acceptance(bool full, int threads = 1);

}  // namespace specden
