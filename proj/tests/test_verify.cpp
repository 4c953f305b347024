#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opvd/verify.hpp"

// The heavy checks themselves run in the acceptance binary; here only the
// registry contract is covered.

TEST_CASE("the acceptance registry lists the full criterion set") {
  const auto names = opvd::verify::check_names();
  CHECK(names.size() == 11);
  CHECK(names.front() == "schwinger-mass");
  CHECK(names.back() == "finite-part-engine");
}

TEST_CASE("unknown check names are rejected") {
  CHECK_THROWS_AS(opvd::verify::run_check("no-such-check", 1),
                  std::invalid_argument);
}

TEST_CASE("a single named check runs and reports") {
  const auto r = opvd::verify::run_check("clifford-identities", 1);
  CHECK(r.pass);
  CHECK(r.threshold == 1e-13);
  CHECK(r.seconds >= 0.0);
}
