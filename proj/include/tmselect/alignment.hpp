#pragma once

#include <cstdint>
#include <vector>

#include "tmselect/corpus.hpp"

namespace tmselect {

/// Unit-cost token-level edit distance.
int edit_distance(const Sentence& x, const Sentence& z);

enum class AlignMode {
  canonical,    // deterministic backtrace, preference match > sub > del > ins
  any_optimal,  // position flagged iff matched in at least one optimal alignment
  sampled,      // one optimal backtrace sampled uniformly per step from seed
};

struct DlAlignMode {
  AlignMode mode = AlignMode::canonical;
  std::uint64_t seed = 0;
};

/// Per-position flags over x: 1 where x[i] is aligned to an equal token at
/// zero cost under the requested mode. An empty z yields all zeros.
std::vector<char> matched_positions(const Sentence& x, const Sentence& z,
                                    DlAlignMode mode);

}  // namespace tmselect
