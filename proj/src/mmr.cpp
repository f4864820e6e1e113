#include "tmselect/mmr.hpp"

#include <algorithm>

#include "tmselect/errors.hpp"

namespace tmselect {

SelectionResult mmr_select(const Sentence& query, const std::vector<int>& pool_ids,
                           const TranslationMemory& tm, int k, MmrConfig cfg) {
  if (pool_ids.empty()) throw EmptyPool("candidate pool is empty");
  if (k < 1) throw InvalidParams("k must be at least 1");
  if (cfg.alpha < 0.0 || cfg.alpha > 1.0) throw InvalidParams("alpha must lie in [0,1]");

  const int pool = static_cast<int>(pool_ids.size());
  auto source = [&](int i) -> const Sentence& {
    int id = pool_ids[i];
    if (id < 0 || id >= tm.size()) throw UnknownId("entry id out of range");
    return tm.entries[id].source;
  };

  std::vector<double> relevance(pool);
  for (int i = 0; i < pool; ++i) relevance[i] = levenshtein_similarity(query, source(i));

  // Running max similarity to the selected set, updated after each pick.
  std::vector<double> redundancy(pool, 0.0);
  std::vector<char> taken(pool, 0);

  SelectionResult res;
  const int steps = std::min(k, pool);
  for (int step = 0; step < steps; ++step) {
    int best = -1;
    double best_score = 0.0;
    for (int i = 0; i < pool; ++i) {
      if (taken[i]) continue;
      double score = step == 0
                         ? relevance[i]
                         : (1.0 - cfg.alpha) * relevance[i] - cfg.alpha * redundancy[i];
      if (best < 0 || score > best_score ||
          (score == best_score && pool_ids[i] < pool_ids[best])) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = 1;
    res.ids.push_back(pool_ids[best]);
    res.step_gains.push_back(best_score);
    for (int i = 0; i < pool; ++i) {
      if (taken[i]) continue;
      redundancy[i] = std::max(redundancy[i], levenshtein_similarity(source(i), source(best)));
    }
  }
  return res;
}

}  // namespace tmselect
