#pragma once

#include <functional>
#include <string>
#include <vector>

namespace eisen {

class SpaceStore;

// Outcome of one numbered acceptance check. Every check is an exact
// comparison; there are no numeric tolerances.
struct CheckOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;  // not started because the budget ran out
  std::size_t cases = 0;
  std::vector<std::string> failures;  // first few offending cases
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  double budget_seconds = 0;  // 0: no limit
  SpaceStore* store = nullptr;
  std::function<void(const CheckOutcome&)> on_check;  // called as each check finishes
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckOutcome> checks;
  bool budget_exhausted = false;
  // A skipped check counts as a failure: a partial run proves nothing.
  bool pass() const;
};

constexpr int kNumCriteria = 11;

std::string criterion_name(int id);
CheckOutcome run_criterion(int id, SpaceStore* store = nullptr);

// index: 1-3, cusp: 9, dim: 4-8, eisen: 10, structure: 11, all: 1-11.
// Throws UsageError for an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);
SuiteResult run_suite(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace eisen
