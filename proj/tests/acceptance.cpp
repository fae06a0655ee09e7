// Runs the numbered acceptance checks and prints one line per check.
// With arguments, only the listed check numbers run.

#include "eisen/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace {

// Every check compares integers or exact rationals; nothing is approximate.
constexpr const char* kTolerance = "exact";

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= eisen::kNumCriteria; ++i) ids.push_back(i);
  }
  int failed = 0;
  for (int id : ids) {
    if (id < 1 || id > eisen::kNumCriteria) {
      std::fprintf(stderr, "no check numbered %d\n", id);
      return 2;
    }
    const auto c = eisen::run_criterion(id);
    std::printf("criterion %2d %s  %s [%s, %zu cases, %.1f s]: %s\n", id, c.pass ? "PASS" : "FAIL", c.name.c_str(),
                kTolerance, c.cases, c.seconds, c.detail.c_str());
    for (const auto& f : c.failures) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
    if (!c.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}
