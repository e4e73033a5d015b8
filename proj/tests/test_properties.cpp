#include <doctest.h>

#include "properties.hpp"

TEST_CASE("randomised properties") {
  for (const auto& p : support::run_properties(support::kMasterSeed)) {
    CAPTURE(p.name);
    CHECK(p.cases >= 500);
    CHECK(p.failures == 0);
  }
}
