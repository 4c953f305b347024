// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. `--seed N` fixes the random streams (default 1).

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "opvd/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);

  const auto results = opvd::verify::run_suite("all", seed);
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failures;
    std::printf("%s %-36s measured=%.6e threshold=%.6e (%.2fs) %s\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                r.threshold, r.seconds, r.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(results.size()) - failures, results.size());
  return failures;
}
