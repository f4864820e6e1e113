#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tmselect {

using Token = std::string;
using Sentence = std::vector<Token>;

/// Splits a pre-tokenized line on runs of whitespace. No case folding,
/// no segmentation; an empty line yields an empty sentence.
Sentence tokenize(std::string_view line);

/// Inverse of tokenize for whitespace-clean tokens.
std::string join(const Sentence& s);

struct TmEntry {
  int id = 0;
  Sentence source;
  Sentence target;
};

/// Immutable store of aligned sentence pairs plus source-side document
/// frequencies. All operations over it are pure and thread-safe.
struct TranslationMemory {
  std::vector<TmEntry> entries;
  std::unordered_map<Token, int> doc_freq;  // distinct per entry

  int size() const { return static_cast<int>(entries.size()); }
};

/// Builds a TM from sentence pairs: ids assigned densely in order, pairs
/// with an empty side dropped (caller has already been warned).
TranslationMemory build_tm(std::vector<std::pair<Sentence, Sentence>> pairs);

/// Loads two line-aligned UTF-8 files. Pairs that tokenize to empty on
/// either side are dropped with a warning on stderr; ids stay dense.
TranslationMemory load_parallel(const std::string& source_path,
                                const std::string& target_path);

/// Smoothed inverse document frequency: ln((size+1)/(df+1)) + 1.
/// Strictly positive; unseen terms use df = 0.
double idf(const TranslationMemory& tm, const Token& term);

/// 1 - d(x,y)/max(|x|,|y|) with d the token-level Levenshtein distance.
/// Throws BothEmpty when both sentences are empty.
double levenshtein_similarity(const Sentence& x, const Sentence& y);

enum class Bucket { test04, test06, discard };

const char* bucket_name(Bucket b);

struct PartitionRow {
  int query_index = 0;
  double best_similarity = 0.0;
  Bucket bucket = Bucket::discard;
};

/// Buckets each query by its best similarity against the TM sources:
/// [0.4, 0.6) -> test04, >= 0.6 -> test06, below -> discard.
std::vector<PartitionRow> partition_testset(const std::vector<Sentence>& queries,
                                            const TranslationMemory& tm);

}  // namespace tmselect
