#ifndef GOODTURING_VERIFY_HPP
#define GOODTURING_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace goodturing {

enum class VerifyLevel { kFast, kFull };

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed error (relative unless noted)
  double tolerance = 0.0;
  std::string detail;
};

// Self-check suites behind `goodturing verify`. Fast enumerates set
// partitions up to n = 8; full goes to n = 12 and adds Monte Carlo checks.
std::vector<CheckResult> run_verification(VerifyLevel level,
                                          const std::function<void(const CheckResult&)>& on_result = {});

// "PASS name  worst=... tol=..." style line.
std::string format_check(const CheckResult& r);

}  // namespace goodturing

#endif  // GOODTURING_VERIFY_HPP
