#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "tmselect/corpus.hpp"

namespace tmselect {

inline constexpr const char* kIndexMagic = "TMSELECT-BM25-v1";

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct Posting {
  int entry_id = 0;
  int term_freq = 0;
};

/// Inverted index over TM source sides. Postings lists are sorted by id.
struct Bm25Index {
  std::unordered_map<Token, std::vector<Posting>> postings;
  std::vector<int> entry_lengths;
  double avg_length = 0.0;
  Bm25Params params;

  int size() const { return static_cast<int>(entry_lengths.size()); }
};

/// Throws InvalidParams if k1 <= 0, b outside [0,1], or the TM is empty.
Bm25Index build_index(const TranslationMemory& tm, Bm25Params params = {});

struct CandidatePool {
  std::vector<int> ids;        // score-descending, ties by ascending id
  std::vector<double> scores;  // matching order
};

/// Scores every entry with Okapi BM25 and returns up to `capacity` best.
/// Zero-score entries are excluded. Throws EmptyQuery / InvalidParams.
CandidatePool top_t(const Bm25Index& index, const Sentence& query, int capacity);

/// Versioned text dump carrying the TM and parameters; the index itself is
/// rebuilt deterministically on load, so round-trips reproduce identical
/// top_t output.
void save_index(const TranslationMemory& tm, const Bm25Params& params,
                const std::string& path);

struct LoadedIndex {
  TranslationMemory tm;
  Bm25Index index;
};

LoadedIndex load_index(const std::string& path);

}  // namespace tmselect
