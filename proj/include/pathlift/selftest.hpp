#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pathlift {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::string first_failure;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;

  bool all_passed() const;
  /// One line per suite; identical for identical seeds.
  std::string summary() const;
};

/// Runs every randomized invariant suite with the given seed. `scale`
/// multiplies the instance counts.
SelftestReport run_selftest(std::uint64_t seed, std::size_t scale = 1);

}  // namespace pathlift
