#include "tmselect/metrics.hpp"

#include <algorithm>
#include <unordered_map>

#include "tmselect/errors.hpp"

namespace tmselect {

namespace {

// Reference types in first-occurrence order, for deterministic accumulation.
std::vector<std::pair<Token, int>> type_counts(const Sentence& s) {
  std::vector<std::pair<Token, int>> out;
  std::unordered_map<Token, int> pos;
  for (const auto& t : s) {
    auto [it, inserted] = pos.emplace(t, static_cast<int>(out.size()));
    if (inserted) {
      out.emplace_back(t, 1);
    } else {
      ++out[it->second].second;
    }
  }
  return out;
}

int count_in(const Sentence& s, const Token& t) {
  return static_cast<int>(std::count(s.begin(), s.end(), t));
}

}  // namespace

double metric_coverage(const std::vector<Sentence>& examples, const Sentence& reference) {
  if (reference.empty()) throw EmptyReference("reference has no tokens");
  double covered = 0.0;
  for (const auto& [term, ref_count] : type_counts(reference)) {
    int best = 0;
    for (const auto& e : examples) best = std::max(best, std::min(count_in(e, term), ref_count));
    covered += best;
  }
  return covered / static_cast<double>(reference.size());
}

double metric_pertinence(const std::vector<Sentence>& examples, const Sentence& reference,
                         ClipMode clip) {
  long long total_length = 0;
  for (const auto& e : examples) total_length += static_cast<long long>(e.size());
  if (examples.empty() || total_length == 0) throw EmptyExamples("no example tokens");

  auto ref_counts = type_counts(reference);
  double useful = 0.0;
  if (clip == ClipMode::per_example) {
    for (const auto& e : examples) {
      for (const auto& [term, ref_count] : ref_counts) {
        useful += std::min(count_in(e, term), ref_count);
      }
    }
  } else {
    for (const auto& [term, ref_count] : ref_counts) {
      int pooled = 0;
      for (const auto& e : examples) pooled += count_in(e, term);
      useful += std::min(pooled, ref_count);
    }
  }
  return useful / static_cast<double>(total_length);
}

double metric_length(const std::vector<Sentence>& examples) {
  if (examples.empty()) throw EmptyExamples("no examples");
  long long total = 0;
  for (const auto& e : examples) total += static_cast<long long>(e.size());
  return static_cast<double>(total) / static_cast<double>(examples.size());
}

RetrievalMetrics evaluate_examples(const std::vector<Sentence>& examples,
                                   const Sentence& reference) {
  RetrievalMetrics m;
  m.coverage = metric_coverage(examples, reference);
  m.pertinence = metric_pertinence(examples, reference);
  m.mean_length = metric_length(examples);
  return m;
}

}  // namespace tmselect
