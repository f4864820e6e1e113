#include "tmselect/submodular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tmselect/errors.hpp"
#include "tmselect/rng.hpp"

namespace tmselect {

CoverageObjective make_objective(std::vector<AspectProfile> profiles, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw InvalidParams("lambda must lie in [0,1]");
  CoverageObjective obj;
  obj.lambda = lambda;
  obj.profiles = std::move(profiles);
  if (!obj.profiles.empty()) obj.aspect_count = static_cast<int>(obj.profiles[0].weights.size());
  for (std::size_t i = 0; i < obj.profiles.size(); ++i) {
    const auto& p = obj.profiles[i];
    if (static_cast<int>(p.weights.size()) != obj.aspect_count) {
      throw InvalidParams("profiles disagree on aspect count");
    }
    for (double w : p.weights) {
      if (w < 0.0) throw InvalidParams("coverage weights must be non-negative");
    }
    if (!obj.index_of.emplace(p.entry_id, static_cast<int>(i)).second) {
      throw InvalidParams("duplicate entry id in objective pool");
    }
  }
  return obj;
}

namespace {

int profile_index(const CoverageObjective& obj, int id) {
  auto it = obj.index_of.find(id);
  if (it == obj.index_of.end()) throw UnknownId("unknown entry id " + std::to_string(id));
  return it->second;
}

double value_over_indices(const CoverageObjective& obj, const std::vector<int>& idx) {
  double total = 0.0;
  std::vector<double> weights(idx.size());
  for (int n = 0; n < obj.aspect_count; ++n) {
    for (std::size_t j = 0; j < idx.size(); ++j) weights[j] = obj.profiles[idx[j]].weights[n];
    std::sort(weights.begin(), weights.end(), std::greater<double>());
    double mult = 1.0;
    for (double w : weights) {
      total += mult * w;
      mult *= obj.lambda;  // lambda = 0 keeps the single best weight
    }
  }
  return total;
}

// True when `cand` beats the incumbent under the tie policy. Indices are
// positions in the profile vector (insertion order).
bool prefer(const CoverageObjective& obj, TiePolicy tie, int cand_idx, int best_idx) {
  switch (tie) {
    case TiePolicy::lowest_id:
      return obj.profiles[cand_idx].entry_id < obj.profiles[best_idx].entry_id;
    case TiePolicy::highest_id:
      return obj.profiles[cand_idx].entry_id > obj.profiles[best_idx].entry_id;
    case TiePolicy::insertion_order:
      return cand_idx < best_idx;
  }
  return false;
}

}  // namespace

double coverage_value(const CoverageObjective& obj, const std::vector<int>& subset_ids) {
  std::vector<int> idx;
  idx.reserve(subset_ids.size());
  for (int id : subset_ids) idx.push_back(profile_index(obj, id));
  return value_over_indices(obj, idx);
}

double marginal_gain(const CoverageObjective& obj, const std::vector<int>& subset_ids,
                     int candidate_id) {
  for (int id : subset_ids) {
    if (id == candidate_id) throw AlreadySelected("candidate already in subset");
  }
  std::vector<int> with = subset_ids;
  with.push_back(candidate_id);
  return coverage_value(obj, with) - coverage_value(obj, subset_ids);
}

SelectionResult greedy_full(const CoverageObjective& obj, int k, TiePolicy tie) {
  if (obj.profiles.empty()) throw EmptyPool("candidate pool is empty");
  if (k < 1) throw InvalidParams("k must be at least 1");

  const int pool = static_cast<int>(obj.profiles.size());
  const int steps = std::min(k, pool);
  std::vector<char> taken(pool, 0);
  std::vector<int> chosen_idx;
  SelectionResult res;
  double current = 0.0;
  for (int step = 0; step < steps; ++step) {
    int best = -1;
    double best_value = 0.0;
    for (int c = 0; c < pool; ++c) {
      if (taken[c]) continue;
      chosen_idx.push_back(c);
      double value = value_over_indices(obj, chosen_idx);
      chosen_idx.pop_back();
      if (best < 0 || value > best_value ||
          (value == best_value && prefer(obj, tie, c, best))) {
        best = c;
        best_value = value;
      }
    }
    taken[best] = 1;
    chosen_idx.push_back(best);
    res.ids.push_back(obj.profiles[best].entry_id);
    res.step_gains.push_back(best_value - current);
    current = best_value;
  }
  res.objective = current;
  return res;
}

SelectionResult greedy_fast(const CoverageObjective& obj, int k, TiePolicy tie) {
  if (obj.profiles.empty()) throw EmptyPool("candidate pool is empty");
  if (k < 1) throw InvalidParams("k must be at least 1");

  const int pool = static_cast<int>(obj.profiles.size());
  const int n = obj.aspect_count;
  const int steps = std::min(k, pool);
  std::vector<double> weight_vector(n, 1.0);
  std::vector<char> taken(pool, 0);
  SelectionResult res;
  for (int step = 0; step < steps; ++step) {
    int best = -1;
    double best_score = 0.0;
    for (int c = 0; c < pool; ++c) {
      if (taken[c]) continue;
      const auto& w = obj.profiles[c].weights;
      double score = 0.0;
      for (int a = 0; a < n; ++a) score += weight_vector[a] * w[a];
      if (best < 0 || score > best_score ||
          (score == best_score && prefer(obj, tie, c, best))) {
        best = c;
        best_score = score;
      }
    }
    taken[best] = 1;
    res.ids.push_back(obj.profiles[best].entry_id);
    res.step_gains.push_back(best_score);
    const auto& w = obj.profiles[best].weights;
    for (int a = 0; a < n; ++a) {
      if (w[a] > 0.0) weight_vector[a] *= obj.lambda;
    }
    if (obj.lambda == 0.0 &&
        std::all_of(weight_vector.begin(), weight_vector.end(),
                    [](double v) { return v == 0.0; })) {
      std::fill(weight_vector.begin(), weight_vector.end(), 1.0);
      ++res.resets;
    }
  }
  res.objective = coverage_value(obj, res.ids);
  return res;
}

SelectionResult brute_force_opt(const CoverageObjective& obj, int k, long long budget) {
  if (obj.profiles.empty()) throw EmptyPool("candidate pool is empty");
  if (k < 1) throw InvalidParams("k must be at least 1");

  const int pool = static_cast<int>(obj.profiles.size());
  const int pick = std::min(k, pool);

  long long combos = 1;
  for (int i = 0; i < pick; ++i) {
    combos = combos * (pool - i) / (i + 1);
    if (combos > budget) {
      throw BudgetExceeded("C(" + std::to_string(pool) + "," + std::to_string(pick) +
                           ") exceeds budget " + std::to_string(budget));
    }
  }

  // Candidate order sorted by entry id, so the first maximum found is the
  // lexicographically smallest id sequence.
  std::vector<int> order(pool);
  for (int i = 0; i < pool; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return obj.profiles[a].entry_id < obj.profiles[b].entry_id;
  });

  std::vector<int> comb(pick);
  for (int i = 0; i < pick; ++i) comb[i] = i;
  std::vector<int> best_comb;
  double best_value = -1.0;
  std::vector<int> idx(pick);
  while (true) {
    for (int i = 0; i < pick; ++i) idx[i] = order[comb[i]];
    double value = value_over_indices(obj, idx);
    if (value > best_value) {
      best_value = value;
      best_comb = comb;
    }
    int pos = pick - 1;
    while (pos >= 0 && comb[pos] == pool - pick + pos) --pos;
    if (pos < 0) break;
    ++comb[pos];
    for (int i = pos + 1; i < pick; ++i) comb[i] = comb[i - 1] + 1;
  }

  SelectionResult res;
  for (int c : best_comb) res.ids.push_back(obj.profiles[order[c]].entry_id);
  res.objective = best_value;
  return res;
}

double bound_ratio(double lambda, int k) {
  if (k < 1) throw InvalidParams("k must be at least 1");
  if (lambda < 0.0 || lambda > 1.0) throw InvalidParams("lambda must lie in [0,1]");
  if (lambda == 1.0) return 1.0;
  return (1.0 - std::pow(lambda, k)) / (k * (1.0 - lambda));
}

CoverageObjective tightness_instance(int n_aspects, int k, double lambda) {
  if (n_aspects <= k) throw InvalidDims("construction needs more aspects than picks");
  std::vector<AspectProfile> profiles;
  profiles.reserve(2 * static_cast<std::size_t>(n_aspects));
  for (int i = 0; i < n_aspects; ++i) {
    AspectProfile p;
    p.entry_id = i;
    p.weights.assign(n_aspects, 1.0);
    profiles.push_back(std::move(p));
  }
  for (int i = 0; i < n_aspects; ++i) {
    AspectProfile p;
    p.entry_id = n_aspects + i;
    p.weights.assign(n_aspects, 0.0);
    p.weights[i] = static_cast<double>(n_aspects);
    profiles.push_back(std::move(p));
  }
  return make_objective(std::move(profiles), lambda);
}

SubmodularityReport check_submodularity(const SetFunction& f,
                                        const std::vector<int>& pool_ids, int trials,
                                        std::uint64_t seed) {
  if (pool_ids.size() < 3) throw InvalidParams("pool must hold at least 3 elements");
  SplitMix64 rng(seed);
  SubmodularityReport report;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::size_t a = rng.below(pool_ids.size());
    std::size_t b = rng.below(pool_ids.size() - 1);
    if (b >= a) ++b;
    int x1 = pool_ids[a];
    int x2 = pool_ids[b];
    std::vector<int> base;
    for (std::size_t i = 0; i < pool_ids.size(); ++i) {
      if (i != a && i != b && rng.next() % 2 == 0) base.push_back(pool_ids[i]);
    }
    std::vector<int> with1 = base, with2 = base, with12 = base;
    with1.push_back(x1);
    with2.push_back(x2);
    with12.push_back(x1);
    with12.push_back(x2);
    double slack = f(with1) + f(with2) - f(with12) - f(base);
    report.min_slack = std::min(report.min_slack, slack);
    if (slack < -1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "submodularity violated: |X|=%zu x1=%d x2=%d slack=%.3e",
                    base.size(), x1, x2, slack);
      throw ViolationFound(buf, slack);
    }
  }
  report.trials = trials;
  return report;
}

SubmodularityReport check_submodularity(const CoverageObjective& obj, int trials,
                                        std::uint64_t seed) {
  std::vector<int> ids;
  ids.reserve(obj.profiles.size());
  for (const auto& p : obj.profiles) ids.push_back(p.entry_id);
  auto f = [&obj](const std::vector<int>& subset) { return coverage_value(obj, subset); };
  return check_submodularity(f, ids, trials, seed);
}

}  // namespace tmselect
