#pragma once

#include <string>
#include <vector>

namespace mixmult {

/// One golden value of the built-in example.
struct GoldenClaim {
  std::string claim;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// Recomputes every golden value of the built-in W x W example (the
/// intersection table, envelopes, piecewise limits, mixed multiplicities,
/// cone thresholds, Minkowski inequalities) plus the one-dimensional
/// filtration oracles. Never throws: a computation error becomes a failing row.
std::vector<GoldenClaim> run_golden_suite();

}  // namespace mixmult
