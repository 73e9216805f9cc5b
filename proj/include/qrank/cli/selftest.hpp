// Seeded invariant sweeps behind `qrank selftest`.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qrank::cli {

struct SelftestOptions {
  std::uint64_t seed = 1;
  int draws = 10000;
  int grid = 1001;
  /// Replaces every per-check tolerance when set.
  std::optional<double> tolerance;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double tolerance = 0.0;
  double max_error = 0.0;
  int failures = 0;
  std::string worst;  // parameters at max_error
};

struct SelftestReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  /// One line per check, deterministic for fixed options.
  std::string summary() const;
};

SelftestReport run_selftest(const SelftestOptions& options);

}  // namespace qrank::cli
