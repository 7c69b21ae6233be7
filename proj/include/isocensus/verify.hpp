#pragma once

// Seeded property suites over sampled primes and parameters.

#include <cstdint>
#include <string>
#include <vector>

namespace isocensus {

struct PropertyResult {
  std::string suite;
  std::string property;
  std::int64_t checked = 0;
  std::int64_t failures = 0;
  std::string detail;  // first failure, if any

  bool passed() const noexcept { return failures == 0 && checked > 0; }
};

struct SuiteOptions {
  std::vector<std::uint32_t> primes;  // primes = 1 (mod 4) are used; others are skipped
  std::uint64_t seed = 0;
  int samples = 100;  // sampled parameters per prime
};

/// Suite names: family1, family2, intersection, tables, weil, isogeny.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace isocensus
