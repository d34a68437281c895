#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fockband {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the twelve verification criteria and reports one line per criterion.
// `progress`, when set, is called with each result as it completes.
std::vector<CriterionResult> run_verification(
    const std::function<void(const CriterionResult&)>& progress = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fockband
