#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tmselect/aspects.hpp"

namespace tmselect {

/// Smoothed weighted coverage objective over a fixed candidate pool.
/// f(Z) = sum over aspects of the subset's weights sorted descending and
/// discounted geometrically by lambda^(rank-1). lambda = 0 keeps only the
/// best weight per aspect; lambda = 1 is the modular sum.
struct CoverageObjective {
  std::vector<AspectProfile> profiles;
  double lambda = 0.0;
  int aspect_count = 0;
  std::unordered_map<int, int> index_of;  // entry id -> profile index
};

/// Validates dimensions, lambda range and weight non-negativity.
CoverageObjective make_objective(std::vector<AspectProfile> profiles, double lambda);

double coverage_value(const CoverageObjective& obj, const std::vector<int>& subset_ids);

/// f(Z + {candidate}) - f(Z). Throws AlreadySelected / UnknownId.
double marginal_gain(const CoverageObjective& obj, const std::vector<int>& subset_ids,
                     int candidate_id);

enum class TiePolicy { lowest_id, highest_id, insertion_order };

struct SelectionResult {
  std::vector<int> ids;            // selection order
  double objective = 0.0;          // f over the final set
  std::vector<double> step_gains;  // exact marginal gains (greedy_full),
                                   // W-weighted scores (greedy_fast),
                                   // selection scores (mmr)
  int resets = 0;                  // W re-initializations (greedy_fast only)
};

/// Exact greedy: argmax f(Z + {z}) per step, recomputed from scratch.
SelectionResult greedy_full(const CoverageObjective& obj, int k,
                            TiePolicy tie = TiePolicy::lowest_id);

/// Weighted greedy: argmax W.v(z) per step; covered aspects get W *= lambda;
/// at lambda = 0 an all-zero W is reset to all-ones. The reported objective
/// is the true f recomputed over the selection.
SelectionResult greedy_fast(const CoverageObjective& obj, int k,
                            TiePolicy tie = TiePolicy::lowest_id);

/// Exhaustive maximizer over all k-subsets; ties resolved toward the
/// lexicographically smallest id sequence. Throws BudgetExceeded when
/// C(pool, k) exceeds the budget.
SelectionResult brute_force_opt(const CoverageObjective& obj, int k,
                                long long budget = 2'000'000);

/// (1/k) * sum_{j<k} lambda^j; the guaranteed fraction of the optimum.
double bound_ratio(double lambda, int k);

/// Worst-case pool on which weighted greedy exactly attains bound_ratio:
/// N uniform candidates (ids 0..N-1) ordered before N single-aspect
/// indicators (ids N..2N-1). Weights are scaled by N relative to the
/// textbook construction so that tie comparisons are float-exact; the
/// greedy/optimal ratio is scale-invariant. Requires n_aspects > k.
CoverageObjective tightness_instance(int n_aspects, int k, double lambda);

using SetFunction = std::function<double(const std::vector<int>&)>;

struct SubmodularityReport {
  long long trials = 0;
  double min_slack = 0.0;
};

/// Samples random (X, x1, x2) and checks
/// f(X+{x1}) + f(X+{x2}) >= f(X+{x1,x2}) + f(X) within 1e-9 slack.
/// Throws ViolationFound with the witness on failure.
SubmodularityReport check_submodularity(const SetFunction& f,
                                        const std::vector<int>& pool_ids,
                                        int trials, std::uint64_t seed);

SubmodularityReport check_submodularity(const CoverageObjective& obj, int trials,
                                        std::uint64_t seed);

}  // namespace tmselect
