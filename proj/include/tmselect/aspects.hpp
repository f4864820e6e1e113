#pragma once

#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "tmselect/alignment.hpp"
#include "tmselect/corpus.hpp"

namespace tmselect {

enum class ScoreKind { sdm, ngm, dl };
enum class NormKind { card, idf };

/// The ordered aspect list of one query: bag-of-words terms (sdm),
/// 1-4-grams (ngm) or token positions (dl), with the per-aspect target
/// counts and the IDF shares used for rarity normalization.
struct AspectSpace {
  ScoreKind kind = ScoreKind::sdm;
  NormKind norm = NormKind::card;
  Sentence query;
  std::vector<std::string> keys;        // n-gram keys are space-joined
  std::vector<double> target_counts;    // occurrences in the query; 1 for dl
  std::vector<double> norm_weights;     // IDF shares, sum to 1 under idf
  std::unordered_map<std::string, int> key_index;

  int size() const { return static_cast<int>(keys.size()); }
};

/// Throws EmptyQuery on an empty query.
AspectSpace build_aspect_space(const Sentence& x, ScoreKind kind, NormKind norm,
                               const TranslationMemory& tm);

/// Weight sequence of one candidate over a query's aspect space.
struct AspectProfile {
  int entry_id = 0;
  std::vector<double> weights;
};

/// Raw weight per term: min(count in z, count in query).
AspectProfile profile_sdm(const AspectSpace& space, const Sentence& z, int entry_id);

/// Same clipped-min rule per 1-4-gram.
AspectProfile profile_ngm(const AspectSpace& space, const Sentence& z, int entry_id);

/// 0/1 per query position: 1 iff the position is matched in an optimal
/// Levenshtein alignment under the requested mode.
AspectProfile profile_dl(const AspectSpace& space, const Sentence& z, int entry_id,
                         DlAlignMode mode);

/// card + sdm/ngm: divide by N. card + dl: divide by max(|x|,|z|), which
/// depends on the candidate. idf: raw weight times the aspect's IDF share
/// per occurrence.
AspectProfile normalize(AspectProfile raw, const AspectSpace& space,
                        const Sentence& z);

/// Raw profile of the right kind, then normalize.
AspectProfile build_profile(const AspectSpace& space, const Sentence& z,
                            int entry_id, DlAlignMode mode = {});

/// Debug export: entry_id, aspect_key, weight (9 decimals), one row per aspect.
void export_profiles_tsv(std::ostream& os, const AspectSpace& space,
                         const std::vector<AspectProfile>& profiles);

}  // namespace tmselect
