#pragma once

// Named verification suites over one loop on Z/p^eZ. Every check either holds
// on the whole loop (exhaustive or sampled within the budget) or reports a
// counterexample.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eloop/diagnostics.hpp"

namespace eloop {

struct CheckResult {
  std::string suite;
  std::string check;
  bool passed = true;
  /// False when the hypotheses of the check do not hold for this loop; such
  /// checks count as passed.
  bool applicable = true;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::string detail;
  std::vector<LoopPoint<ZpeElem>> counterexample;
  std::vector<std::int64_t> parameters;
};

/// axioms, power, hessian, strat, layers, infinity, witnesses, lownil,
/// torsion, tech.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws PreconditionUnmet on an
/// unknown name.
std::vector<CheckResult> run_suite(const Loop<ZpeElem>& loop, std::string_view suite, std::uint64_t budget,
                                   std::uint64_t seed);

}  // namespace eloop
