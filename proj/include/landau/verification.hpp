#pragma once

#include <string>
#include <vector>

namespace landau {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the invariant suite behind `landau verify`. `thorough` uses the full
/// quantum-number ranges and 512^2 grids; otherwise reduced ranges and 256^2 grids.
std::vector<CheckResult> run_verification(bool thorough = false);

}  // namespace landau
