#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace isogroup {

/// Outcome of one reference-value check.
struct FixtureCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;   ///< the quantity compared against the tolerance
  double tolerance = 0.0;
  std::string detail;
};

/// Directory holding the shipped fixture files (configured at build time).
std::filesystem::path default_fixture_dir();

/// Re-derives every published reference value from the fixture files in
/// `dir` and reports one check per value.
std::vector<FixtureCheck> verify_fixtures(const std::filesystem::path& dir);

}  // namespace isogroup
