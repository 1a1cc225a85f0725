#pragma once

#include <string>
#include <vector>

namespace mgarena {

enum class SelftestLevel { Fast, Full };

struct SelftestOptions {
  SelftestLevel level = SelftestLevel::Fast;
  // Test hook: swaps two rules of the entangle move so the dynamics check must fail.
  bool corrupt_rules = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Fast: rewrite batches, exhaustive bijection and profile checks for L <= 6,
// layout dynamics for L <= 5. Full raises the exhaustive limits to 8 and 6.
std::vector<CheckResult> run_selftest(const SelftestOptions& opts);

}  // namespace mgarena
