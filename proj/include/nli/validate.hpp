#pragma once

// Self-validation suite: every closed form is exercised against an
// independent witness (Gaussian-moment oracle, truncated-basis simulation,
// numeric optimizer, algebraic identity, or Monte Carlo).  The fast tier is
// cheap enough to run on every build and is the target of the mutation
// sensitivity contract: perturbing any single formula constant must fail at
// least one fast check.  The full tier adds the simulation- and
// sampling-backed checks.

#include <cstdint>
#include <string>
#include <vector>

namespace nli::check {

enum class Tier { Fast, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;  // worst observed deviation, in the check's units
  double tolerance = 0.0;
  double seconds = 0.0;    // wall time; excluded from deterministic reports
  std::string note;        // failure detail (e.g. an exception message)
};

/// Run the suite.  Deterministic for a fixed (tier, seed) pair.
std::vector<CheckResult> run_suite(Tier tier, std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace nli::check
