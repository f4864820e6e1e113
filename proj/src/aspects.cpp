#include "tmselect/aspects.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "tmselect/errors.hpp"

namespace tmselect {

namespace {

// N-gram key: member tokens joined by a single space. Tokens cannot contain
// whitespace, so the separator never collides.
std::string ngram_key(const Sentence& x, std::size_t start, std::size_t n) {
  std::string key = x[start];
  for (std::size_t i = 1; i < n; ++i) {
    key += ' ';
    key += x[start + i];
  }
  return key;
}

void add_aspect(AspectSpace& sp, std::string key, double idf_value) {
  auto [it, inserted] = sp.key_index.emplace(std::move(key), sp.size());
  if (inserted) {
    sp.keys.push_back(it->first);
    sp.target_counts.push_back(1.0);
    sp.norm_weights.push_back(idf_value);  // raw IDF for now, shared later
  } else {
    sp.target_counts[it->second] += 1.0;
  }
}

}  // namespace

AspectSpace build_aspect_space(const Sentence& x, ScoreKind kind, NormKind norm,
                               const TranslationMemory& tm) {
  if (x.empty()) throw EmptyQuery("cannot build an aspect space for an empty query");
  AspectSpace sp;
  sp.kind = kind;
  sp.norm = norm;
  sp.query = x;

  switch (kind) {
    case ScoreKind::sdm:
      for (const auto& t : x) add_aspect(sp, t, idf(tm, t));
      break;
    case ScoreKind::ngm:
      for (std::size_t n = 1; n <= std::min<std::size_t>(4, x.size()); ++n) {
        for (std::size_t i = 0; i + n <= x.size(); ++i) {
          double mean_idf = 0.0;
          for (std::size_t j = 0; j < n; ++j) mean_idf += idf(tm, x[i + j]);
          mean_idf /= static_cast<double>(n);
          add_aspect(sp, ngram_key(x, i, n), mean_idf);
        }
      }
      break;
    case ScoreKind::dl:
      for (std::size_t i = 0; i < x.size(); ++i) {
        std::string key = std::to_string(i + 1) + ":" + x[i];
        sp.key_index.emplace(key, sp.size());
        sp.keys.push_back(std::move(key));
        sp.target_counts.push_back(1.0);
        sp.norm_weights.push_back(idf(tm, x[i]));
      }
      break;
  }

  if (norm == NormKind::idf) {
    // Aspect share: count * IDF, normalized to sum 1 over the query.
    double total = 0.0;
    for (int n = 0; n < sp.size(); ++n) total += sp.target_counts[n] * sp.norm_weights[n];
    for (int n = 0; n < sp.size(); ++n) {
      sp.norm_weights[n] = sp.target_counts[n] * sp.norm_weights[n] / total;
    }
  } else {
    std::fill(sp.norm_weights.begin(), sp.norm_weights.end(), 1.0 / sp.size());
  }
  return sp;
}

namespace {

AspectProfile clipped_counts(const AspectSpace& space, const Sentence& z, int entry_id,
                             bool ngrams) {
  AspectProfile p;
  p.entry_id = entry_id;
  p.weights.assign(space.size(), 0.0);
  std::unordered_map<std::string, int> counts;
  if (ngrams) {
    for (std::size_t n = 1; n <= std::min<std::size_t>(4, z.size()); ++n) {
      for (std::size_t i = 0; i + n <= z.size(); ++i) ++counts[ngram_key(z, i, n)];
    }
  } else {
    for (const auto& t : z) ++counts[t];
  }
  for (const auto& [key, count] : counts) {
    auto it = space.key_index.find(key);
    if (it == space.key_index.end()) continue;
    p.weights[it->second] = std::min<double>(count, space.target_counts[it->second]);
  }
  return p;
}

}  // namespace

AspectProfile profile_sdm(const AspectSpace& space, const Sentence& z, int entry_id) {
  return clipped_counts(space, z, entry_id, /*ngrams=*/false);
}

AspectProfile profile_ngm(const AspectSpace& space, const Sentence& z, int entry_id) {
  return clipped_counts(space, z, entry_id, /*ngrams=*/true);
}

AspectProfile profile_dl(const AspectSpace& space, const Sentence& z, int entry_id,
                         DlAlignMode mode) {
  AspectProfile p;
  p.entry_id = entry_id;
  p.weights.assign(space.size(), 0.0);
  auto matched = matched_positions(space.query, z, mode);
  for (std::size_t i = 0; i < matched.size(); ++i) {
    if (matched[i]) p.weights[i] = 1.0;
  }
  return p;
}

AspectProfile normalize(AspectProfile raw, const AspectSpace& space, const Sentence& z) {
  if (space.norm == NormKind::card) {
    double divisor = space.kind == ScoreKind::dl
                         ? static_cast<double>(std::max(space.query.size(), z.size()))
                         : static_cast<double>(space.size());
    for (auto& w : raw.weights) w /= divisor;
  } else {
    // Per matched occurrence the aspect contributes its share divided by
    // the target count, so full self-coverage sums to exactly 1.
    for (int n = 0; n < space.size(); ++n) {
      raw.weights[n] *= space.norm_weights[n] / space.target_counts[n];
    }
  }
  return raw;
}

AspectProfile build_profile(const AspectSpace& space, const Sentence& z, int entry_id,
                            DlAlignMode mode) {
  AspectProfile raw;
  switch (space.kind) {
    case ScoreKind::sdm: raw = profile_sdm(space, z, entry_id); break;
    case ScoreKind::ngm: raw = profile_ngm(space, z, entry_id); break;
    case ScoreKind::dl: raw = profile_dl(space, z, entry_id, mode); break;
  }
  return normalize(std::move(raw), space, z);
}

void export_profiles_tsv(std::ostream& os, const AspectSpace& space,
                         const std::vector<AspectProfile>& profiles) {
  os << "entry_id\taspect_key\tweight\n";
  char buf[40];
  for (const auto& p : profiles) {
    for (int n = 0; n < space.size(); ++n) {
      std::snprintf(buf, sizeof(buf), "%.9f", p.weights[n]);
      os << p.entry_id << "\t" << space.keys[n] << "\t" << buf << "\n";
    }
  }
}

}  // namespace tmselect
