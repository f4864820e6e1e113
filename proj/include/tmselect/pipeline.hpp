#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tmselect/aspects.hpp"
#include "tmselect/bm25.hpp"
#include "tmselect/metrics.hpp"
#include "tmselect/submodular.hpp"

namespace tmselect {

enum class Algo { greedy_full, greedy_fast, mmr, topk };

struct RunConfig {
  ScoreKind score = ScoreKind::dl;
  NormKind norm = NormKind::card;
  double lambda = 0.5;
  int k = 3;
  int capacity = 100;  // BM25 prefilter size
  Algo algo = Algo::greedy_fast;
  DlAlignMode dl_mode{};
  double alpha = 0.3;
  std::uint64_t seed = 42;
  TiePolicy tie = TiePolicy::lowest_id;
  int jobs = 1;
};

std::string config_line(const RunConfig& cfg);

const char* score_name(ScoreKind k);
const char* norm_name(NormKind n);
const char* algo_name(Algo a);
const char* tie_name(TiePolicy t);
const char* align_name(AlignMode m);

/// Parsers for the CLI flags; throw InvalidParams on unknown values.
ScoreKind parse_score(const std::string& s);
NormKind parse_norm(const std::string& s);
Algo parse_algo(const std::string& s);
TiePolicy parse_tie(const std::string& s);
AlignMode parse_align(const std::string& s);

struct SelectionRecord {
  int query_index = 0;
  std::vector<int> ids;                 // selection order
  double objective = 0.0;               // f over the selected set
  std::vector<double> similarities;     // per selected entry, source vs query
  std::vector<Sentence> targets;        // per selected entry
  bool failed = false;
  std::string error;

  bool empty() const { return ids.empty(); }
};

/// BM25 prefilter plus normalized per-candidate profiles for one query.
struct QueryProfiles {
  CandidatePool pool;
  AspectSpace space;
  std::vector<AspectProfile> profiles;
};

QueryProfiles profile_query(const TranslationMemory& tm, const Bm25Index& index,
                            const Sentence& query, const RunConfig& cfg);

/// One query through the pipeline: BM25 prefilter, profiles, selection.
/// An empty candidate pool yields an empty (non-failed) record.
SelectionRecord retrieve_one(const TranslationMemory& tm, const Bm25Index& index,
                             const Sentence& query, int query_index,
                             const RunConfig& cfg);

/// Batch over queries, cfg.jobs workers; output order follows input order.
/// Per-query failures are recorded on the records, not thrown.
std::vector<SelectionRecord> retrieve_batch(const TranslationMemory& tm,
                                            const Bm25Index& index,
                                            const std::vector<Sentence>& queries,
                                            const RunConfig& cfg);

void write_selections_tsv(std::ostream& os, const std::vector<SelectionRecord>& records,
                          const RunConfig& cfg);
std::vector<SelectionRecord> read_selections_tsv(std::istream& is);

struct QueryMetrics {
  int query_index = 0;
  RetrievalMetrics metrics;
  double objective = 0.0;
  std::vector<int> ids;
  bool skipped = false;  // failed or empty selection; excluded from means
};

struct EvaluationReport {
  std::vector<QueryMetrics> per_query;
  RetrievalMetrics means;
  int evaluated = 0;
  int skipped = 0;
};

/// Scores each record's targets against the aligned reference sentence.
/// Throws LineCountMismatch when records and references disagree.
EvaluationReport evaluate_selections(const std::vector<SelectionRecord>& records,
                                     const std::vector<Sentence>& references,
                                     ClipMode clip = ClipMode::per_example);

void write_metrics_tsv(std::ostream& os, const EvaluationReport& report);

}  // namespace tmselect
