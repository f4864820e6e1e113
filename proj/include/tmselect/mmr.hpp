#pragma once

#include <vector>

#include "tmselect/bm25.hpp"
#include "tmselect/corpus.hpp"
#include "tmselect/submodular.hpp"

namespace tmselect {

/// alpha weighs the redundancy penalty: 0 ranks purely by query similarity,
/// 1 maximally penalizes closeness to already-selected examples.
struct MmrConfig {
  double alpha = 0.3;
};

/// Maximum Marginal Relevance over source-side Levenshtein similarity.
/// First pick is the nearest neighbor; each next pick maximizes
/// (1-alpha)*s(z,x) - alpha*max over selected z' of s(z,z').
/// Ties break toward the lowest entry id.
SelectionResult mmr_select(const Sentence& query, const std::vector<int>& pool_ids,
                           const TranslationMemory& tm, int k, MmrConfig cfg);

}  // namespace tmselect
