#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bbs {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// A quick pass over the structural invariants on small seeded instances.
std::vector<CheckResult> run_selftest(std::uint64_t seed = 0);

}  // namespace bbs
