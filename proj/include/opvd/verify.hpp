#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opvd::verify {

struct CheckResult {
  std::string name;
  bool pass;
  double measured;     // the extremal measured quantity
  double threshold;    // the pinned acceptance threshold
  std::string detail;
  double seconds;
};

/// Names of all acceptance checks, in run order.
std::vector<std::string> check_names();

/// Run one named check; randomized checks derive their streams from `seed`.
CheckResult run_check(const std::string& name, std::uint64_t seed);

/// Run every check (suite == "all") or a single named one.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   std::uint64_t seed);

}  // namespace opvd::verify
