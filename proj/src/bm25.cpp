#include "tmselect/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "tmselect/errors.hpp"

namespace tmselect {

Bm25Index build_index(const TranslationMemory& tm, Bm25Params params) {
  if (params.k1 <= 0.0) throw InvalidParams("k1 must be positive");
  if (params.b < 0.0 || params.b > 1.0) throw InvalidParams("b must lie in [0,1]");
  if (tm.size() == 0) throw InvalidParams("translation memory is empty");

  Bm25Index index;
  index.params = params;
  index.entry_lengths.reserve(tm.entries.size());
  long long total = 0;
  for (const auto& e : tm.entries) {
    index.entry_lengths.push_back(static_cast<int>(e.source.size()));
    total += static_cast<long long>(e.source.size());
    std::unordered_map<Token, int> tf;
    for (const auto& t : e.source) ++tf[t];
    for (const auto& [term, count] : tf) index.postings[term].push_back({e.id, count});
  }
  for (auto& [term, list] : index.postings) {
    std::sort(list.begin(), list.end(),
              [](const Posting& a, const Posting& b) { return a.entry_id < b.entry_id; });
  }
  index.avg_length = static_cast<double>(total) / tm.size();
  return index;
}

CandidatePool top_t(const Bm25Index& index, const Sentence& query, int capacity) {
  if (capacity < 1) throw InvalidParams("capacity must be at least 1");
  if (query.empty()) throw EmptyQuery("query has no tokens");

  const double k1 = index.params.k1;
  const double b = index.params.b;
  const int size = index.size();
  std::vector<double> scores(size, 0.0);

  // Unique query terms in first-occurrence order; absent terms contribute 0.
  std::vector<const Token*> terms;
  std::unordered_set<Token> seen;
  for (const auto& t : query) {
    if (seen.insert(t).second) terms.push_back(&t);
  }
  for (const Token* t : terms) {
    auto it = index.postings.find(*t);
    if (it == index.postings.end()) continue;
    const auto& list = it->second;
    double df = static_cast<double>(list.size());
    double idf = std::log(1.0 + (size - df + 0.5) / (df + 0.5));
    for (const Posting& p : list) {
      double tf = p.term_freq;
      double len_norm = 1.0 - b + b * index.entry_lengths[p.entry_id] / index.avg_length;
      scores[p.entry_id] += idf * tf * (k1 + 1.0) / (tf + k1 * len_norm);
    }
  }

  std::vector<int> ids;
  for (int i = 0; i < size; ++i) {
    if (scores[i] > 0.0) ids.push_back(i);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int c) {
    if (scores[a] != scores[c]) return scores[a] > scores[c];
    return a < c;
  });
  if (static_cast<int>(ids.size()) > capacity) ids.resize(capacity);

  CandidatePool pool;
  pool.ids = std::move(ids);
  pool.scores.reserve(pool.ids.size());
  for (int id : pool.ids) pool.scores.push_back(scores[id]);
  return pool;
}

void save_index(const TranslationMemory& tm, const Bm25Params& params,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << kIndexMagic << "\n";
  char buf[80];
  std::snprintf(buf, sizeof(buf), "params\t%.17g\t%.17g\n", params.k1, params.b);
  out << buf;
  out << "entries\t" << tm.size() << "\n";
  for (const auto& e : tm.entries) {
    out << e.id << "\t" << join(e.source) << "\t" << join(e.target) << "\n";
  }
  if (!out) throw IoError("write failed for " + path);
}

LoadedIndex load_index(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kIndexMagic) {
    throw IoError(path + ": bad magic, expected " + std::string(kIndexMagic));
  }
  Bm25Params params;
  if (!std::getline(in, line)) throw IoError(path + ": truncated header");
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> params.k1 >> params.b) || tag != "params") {
      throw IoError(path + ": malformed params line");
    }
  }
  long long count = 0;
  if (!std::getline(in, line)) throw IoError(path + ": truncated header");
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> count) || tag != "entries") {
      throw IoError(path + ": malformed entries line");
    }
  }
  std::vector<std::pair<Sentence, Sentence>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw IoError(path + ": truncated entry block");
    auto first = line.find('\t');
    auto second = line.find('\t', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
      throw IoError(path + ": malformed entry line");
    }
    pairs.emplace_back(tokenize(line.substr(first + 1, second - first - 1)),
                       tokenize(line.substr(second + 1)));
  }
  LoadedIndex loaded;
  loaded.tm = build_tm(std::move(pairs));
  loaded.index = build_index(loaded.tm, params);
  return loaded;
}

}  // namespace tmselect
