#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tmselect/rng.hpp"
#include "tmselect/submodular.hpp"

namespace tmselect {

struct PropertyResult {
  std::string name;
  long long trials = 0;
  double min_slack = 0.0;
  bool passed = false;
  std::string detail;
};

/// Random coverage objectives satisfy the submodularity inequality.
PropertyResult verify_submodularity(std::uint64_t seed, int objectives, int triples_each);

/// lambda=0 equals the per-aspect max form; lambda=1 equals the modular sum.
PropertyResult verify_reductions(std::uint64_t seed, int subsets);

/// f(greedy_fast) >= bound_ratio(lambda,k) * f(optimum) - 1e-9 on random,
/// exhaustively enumerable instances; greedy_full additionally clears the
/// classical 1 - 1/e factor on boolean weights at lambda = 0.
PropertyResult verify_bound(std::uint64_t seed, int instances, long long budget);

/// The worst-case construction attains bound_ratio within 1e-12
/// (exactly 1 at lambda = 1).
PropertyResult verify_tightness();

/// Boolean weights, lambda = 0, no reset fired: greedy_fast and greedy_full
/// return identical selections under the lowest_id tie policy.
PropertyResult verify_boolean_equivalence(std::uint64_t seed, int instances);

std::vector<PropertyResult> run_verification(std::uint64_t seed, long long budget);

/// Structured report: one line per property with trials, min slack, status.
/// Returns true iff every property passed.
bool print_verification(std::ostream& os, const std::vector<PropertyResult>& results);

/// Deterministic random objective used by the verification suites.
CoverageObjective random_objective(SplitMix64& rng, int max_pool, int max_aspects,
                                   double lambda, bool boolean_weights);

}  // namespace tmselect
