#include "tmselect/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "tmselect/errors.hpp"
#include "tmselect/mmr.hpp"

namespace tmselect {

const char* score_name(ScoreKind k) {
  switch (k) {
    case ScoreKind::sdm: return "SDM";
    case ScoreKind::ngm: return "NGM";
    case ScoreKind::dl: return "DL";
  }
  return "?";
}

const char* norm_name(NormKind n) {
  return n == NormKind::card ? "CARD" : "IDF";
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::greedy_full: return "greedy_full";
    case Algo::greedy_fast: return "greedy_fast";
    case Algo::mmr: return "mmr";
    case Algo::topk: return "topk";
  }
  return "?";
}

const char* tie_name(TiePolicy t) {
  switch (t) {
    case TiePolicy::lowest_id: return "lowest_id";
    case TiePolicy::highest_id: return "highest_id";
    case TiePolicy::insertion_order: return "insertion_order";
  }
  return "?";
}

const char* align_name(AlignMode m) {
  switch (m) {
    case AlignMode::canonical: return "canonical";
    case AlignMode::any_optimal: return "any_optimal";
    case AlignMode::sampled: return "sampled";
  }
  return "?";
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

ScoreKind parse_score(const std::string& s) {
  auto v = lower(s);
  if (v == "sdm") return ScoreKind::sdm;
  if (v == "ngm") return ScoreKind::ngm;
  if (v == "dl") return ScoreKind::dl;
  throw InvalidParams("unknown score: " + s);
}

NormKind parse_norm(const std::string& s) {
  auto v = lower(s);
  if (v == "card") return NormKind::card;
  if (v == "idf") return NormKind::idf;
  throw InvalidParams("unknown normalization: " + s);
}

Algo parse_algo(const std::string& s) {
  auto v = lower(s);
  if (v == "greedy_full") return Algo::greedy_full;
  if (v == "greedy_fast") return Algo::greedy_fast;
  if (v == "mmr") return Algo::mmr;
  if (v == "topk") return Algo::topk;
  throw InvalidParams("unknown algorithm: " + s);
}

TiePolicy parse_tie(const std::string& s) {
  auto v = lower(s);
  if (v == "lowest_id") return TiePolicy::lowest_id;
  if (v == "highest_id") return TiePolicy::highest_id;
  if (v == "insertion_order") return TiePolicy::insertion_order;
  throw InvalidParams("unknown tie policy: " + s);
}

AlignMode parse_align(const std::string& s) {
  auto v = lower(s);
  if (v == "canonical") return AlignMode::canonical;
  if (v == "any_optimal") return AlignMode::any_optimal;
  if (v == "sampled") return AlignMode::sampled;
  throw InvalidParams("unknown alignment mode: " + s);
}

std::string config_line(const RunConfig& cfg) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "# config: score=%s norm=%s lambda=%g k=%d top_t=%d algo=%s "
                "dl_mode=%s alpha=%g seed=%llu tie=%s jobs=%d",
                score_name(cfg.score), norm_name(cfg.norm), cfg.lambda, cfg.k,
                cfg.capacity, algo_name(cfg.algo), align_name(cfg.dl_mode.mode),
                cfg.alpha, static_cast<unsigned long long>(cfg.seed),
                tie_name(cfg.tie), cfg.jobs);
  return buf;
}

QueryProfiles profile_query(const TranslationMemory& tm, const Bm25Index& index,
                            const Sentence& query, const RunConfig& cfg) {
  QueryProfiles qp;
  qp.pool = top_t(index, query, cfg.capacity);
  if (qp.pool.ids.empty()) return qp;
  qp.space = build_aspect_space(query, cfg.score, cfg.norm, tm);
  DlAlignMode mode = cfg.dl_mode;
  mode.seed = cfg.seed;
  qp.profiles.reserve(qp.pool.ids.size());
  for (int id : qp.pool.ids) {
    qp.profiles.push_back(build_profile(qp.space, tm.entries[id].source, id, mode));
  }
  return qp;
}

SelectionRecord retrieve_one(const TranslationMemory& tm, const Bm25Index& index,
                             const Sentence& query, int query_index,
                             const RunConfig& cfg) {
  SelectionRecord rec;
  rec.query_index = query_index;
  try {
    QueryProfiles qp = profile_query(tm, index, query, cfg);
    if (qp.pool.ids.empty()) return rec;  // nothing shares a term; empty selection
    CoverageObjective obj = make_objective(std::move(qp.profiles), cfg.lambda);

    SelectionResult sel;
    switch (cfg.algo) {
      case Algo::greedy_full:
        sel = greedy_full(obj, cfg.k, cfg.tie);
        break;
      case Algo::greedy_fast:
        sel = greedy_fast(obj, cfg.k, cfg.tie);
        break;
      case Algo::mmr:
        sel = mmr_select(query, qp.pool.ids, tm, cfg.k, MmrConfig{cfg.alpha});
        sel.objective = coverage_value(obj, sel.ids);
        break;
      case Algo::topk: {
        // Rank by individual normalized score, i.e. the singleton objective.
        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(obj.profiles.size());
        for (const auto& p : obj.profiles) {
          double single = 0.0;
          for (double w : p.weights) single += w;
          ranked.emplace_back(single, p.entry_id);
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
          if (a.first != b.first) return a.first > b.first;
          return a.second < b.second;
        });
        for (int i = 0; i < std::min<int>(cfg.k, static_cast<int>(ranked.size())); ++i) {
          sel.ids.push_back(ranked[i].second);
          sel.step_gains.push_back(ranked[i].first);
        }
        sel.objective = coverage_value(obj, sel.ids);
        break;
      }
    }

    rec.ids = sel.ids;
    rec.objective = sel.objective;
    for (int id : rec.ids) {
      rec.similarities.push_back(levenshtein_similarity(query, tm.entries[id].source));
      rec.targets.push_back(tm.entries[id].target);
    }
  } catch (const Error& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

std::vector<SelectionRecord> retrieve_batch(const TranslationMemory& tm,
                                            const Bm25Index& index,
                                            const std::vector<Sentence>& queries,
                                            const RunConfig& cfg) {
  std::vector<SelectionRecord> records(queries.size());
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || queries.size() <= 1) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      records[q] = retrieve_one(tm, index, queries[q], static_cast<int>(q), cfg);
    }
    return records;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t q = next.fetch_add(1);
      if (q >= queries.size()) return;
      records[q] = retrieve_one(tm, index, queries[q], static_cast<int>(q), cfg);
    }
  };
  std::vector<std::thread> threads;
  for (int j = 0; j < std::min<int>(jobs, static_cast<int>(queries.size())); ++j) {
    threads.emplace_back(worker);
  }
  for (auto& t : threads) t.join();
  return records;
}

namespace {

std::string fmt(double v, int decimals) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Joined token sequences are single-spaced, so a separator with doubled
// spaces can never collide with sentence content (even a literal "|||").
constexpr const char* kTargetSep = "  |||  ";

}  // namespace

void write_selections_tsv(std::ostream& os, const std::vector<SelectionRecord>& records,
                          const RunConfig& cfg) {
  os << config_line(cfg) << "\n";
  os << "query_index\tids\tobjective\tscores\ttargets\tstatus\n";
  for (const auto& rec : records) {
    os << rec.query_index << "\t";
    if (rec.failed || rec.ids.empty()) {
      os << "-\t-\t-\t-\t" << (rec.failed ? "failed:" + rec.error : "empty") << "\n";
      continue;
    }
    for (std::size_t i = 0; i < rec.ids.size(); ++i) os << (i ? "," : "") << rec.ids[i];
    os << "\t" << fmt(rec.objective, 9) << "\t";
    for (std::size_t i = 0; i < rec.similarities.size(); ++i) {
      os << (i ? "," : "") << fmt(rec.similarities[i], 6);
    }
    os << "\t";
    for (std::size_t i = 0; i < rec.targets.size(); ++i) {
      if (i) os << kTargetSep;
      os << join(rec.targets[i]);
    }
    os << "\tok\n";
  }
}

std::vector<SelectionRecord> read_selections_tsv(std::istream& is) {
  std::vector<SelectionRecord> records;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("query_index\t", 0) == 0) continue;
    auto cols = split(line, '\t');
    if (cols.size() != 6) throw IoError("selection row needs 6 columns");
    SelectionRecord rec;
    rec.query_index = std::stoi(cols[0]);
    if (cols[5] != "ok") {
      rec.failed = cols[5].rfind("failed:", 0) == 0;
      if (rec.failed) rec.error = cols[5].substr(7);
      records.push_back(std::move(rec));
      continue;
    }
    for (const auto& part : split(cols[1], ',')) rec.ids.push_back(std::stoi(part));
    rec.objective = std::stod(cols[2]);
    for (const auto& part : split(cols[3], ',')) rec.similarities.push_back(std::stod(part));
    std::string targets = cols[4];
    std::size_t start = 0;
    while (true) {
      auto pos = targets.find(kTargetSep, start);
      std::string one = pos == std::string::npos ? targets.substr(start)
                                                 : targets.substr(start, pos - start);
      rec.targets.push_back(tokenize(one));
      if (pos == std::string::npos) break;
      start = pos + std::char_traits<char>::length(kTargetSep);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

EvaluationReport evaluate_selections(const std::vector<SelectionRecord>& records,
                                     const std::vector<Sentence>& references,
                                     ClipMode clip) {
  if (records.size() != references.size()) {
    throw LineCountMismatch("selections hold " + std::to_string(records.size()) +
                            " queries, references hold " +
                            std::to_string(references.size()));
  }
  EvaluationReport report;
  double cov = 0.0, pert = 0.0, len = 0.0;
  for (const auto& rec : records) {
    if (rec.query_index < 0 ||
        rec.query_index >= static_cast<int>(references.size())) {
      throw LineCountMismatch("selection row " + std::to_string(rec.query_index) +
                              " has no aligned reference");
    }
    QueryMetrics qm;
    qm.query_index = rec.query_index;
    qm.objective = rec.objective;
    qm.ids = rec.ids;
    if (rec.failed || rec.ids.empty()) {
      qm.skipped = true;
    } else {
      try {
        const Sentence& ref = references[rec.query_index];
        qm.metrics.coverage = metric_coverage(rec.targets, ref);
        qm.metrics.pertinence = metric_pertinence(rec.targets, ref, clip);
        qm.metrics.mean_length = metric_length(rec.targets);
      } catch (const Error&) {
        qm.skipped = true;
      }
    }
    if (qm.skipped) {
      ++report.skipped;
    } else {
      ++report.evaluated;
      cov += qm.metrics.coverage;
      pert += qm.metrics.pertinence;
      len += qm.metrics.mean_length;
    }
    report.per_query.push_back(std::move(qm));
  }
  if (report.evaluated > 0) {
    report.means.coverage = cov / report.evaluated;
    report.means.pertinence = pert / report.evaluated;
    report.means.mean_length = len / report.evaluated;
  }
  return report;
}

void write_metrics_tsv(std::ostream& os, const EvaluationReport& report) {
  os << "query_index\tcoverage\tpertinence\tmean_length\tobjective\tids\n";
  for (const auto& qm : report.per_query) {
    os << qm.query_index << "\t";
    if (qm.skipped) {
      os << "-\t-\t-\t-\tskipped\n";
      continue;
    }
    os << fmt(qm.metrics.coverage, 6) << "\t" << fmt(qm.metrics.pertinence, 6) << "\t"
       << fmt(qm.metrics.mean_length, 6) << "\t" << fmt(qm.objective, 9) << "\t";
    for (std::size_t i = 0; i < qm.ids.size(); ++i) os << (i ? "," : "") << qm.ids[i];
    os << "\n";
  }
  os << "# aggregate\tevaluated=" << report.evaluated << "\tskipped=" << report.skipped
     << "\tcoverage=" << fmt(report.means.coverage, 6)
     << "\tpertinence=" << fmt(report.means.pertinence, 6)
     << "\tmean_length=" << fmt(report.means.mean_length, 6) << "\n";
}

}  // namespace tmselect
