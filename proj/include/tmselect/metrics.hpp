#pragma once

#include <vector>

#include "tmselect/corpus.hpp"

namespace tmselect {

struct RetrievalMetrics {
  double coverage = 0.0;
  double pertinence = 0.0;
  double mean_length = 0.0;
};

/// Unigram modified recall of the reference by the example set, normalized
/// by the reference length: per type, the best clipped count over examples.
double metric_coverage(const std::vector<Sentence>& examples, const Sentence& reference);

enum class ClipMode {
  per_example,  // clip each example's matches at the reference counts
  pooled,       // clip the pooled counts once across all examples
};

/// Bag-of-words precision: useful occurrences over the summed example lengths.
double metric_pertinence(const std::vector<Sentence>& examples, const Sentence& reference,
                         ClipMode clip = ClipMode::per_example);

/// Arithmetic mean of example token counts.
double metric_length(const std::vector<Sentence>& examples);

RetrievalMetrics evaluate_examples(const std::vector<Sentence>& examples,
                                   const Sentence& reference);

}  // namespace tmselect
