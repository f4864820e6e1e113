#include "tmselect/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <unordered_set>

#include "tmselect/alignment.hpp"
#include "tmselect/errors.hpp"

namespace tmselect {

Sentence tokenize(std::string_view line) {
  Sentence out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::string join(const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += s[i];
  }
  return out;
}

TranslationMemory build_tm(std::vector<std::pair<Sentence, Sentence>> pairs) {
  TranslationMemory tm;
  tm.entries.reserve(pairs.size());
  for (auto& [src, tgt] : pairs) {
    if (src.empty() || tgt.empty()) continue;
    TmEntry e;
    e.id = static_cast<int>(tm.entries.size());
    e.source = std::move(src);
    e.target = std::move(tgt);
    tm.entries.push_back(std::move(e));
  }
  for (const auto& e : tm.entries) {
    std::unordered_set<Token> seen(e.source.begin(), e.source.end());
    for (const auto& t : seen) ++tm.doc_freq[t];
  }
  return tm;
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

TranslationMemory load_parallel(const std::string& source_path,
                                const std::string& target_path) {
  auto src_lines = read_lines(source_path);
  auto tgt_lines = read_lines(target_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw LineCountMismatch(source_path + " has " + std::to_string(src_lines.size()) +
                            " lines, " + target_path + " has " +
                            std::to_string(tgt_lines.size()));
  }
  std::vector<std::pair<Sentence, Sentence>> pairs;
  pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    Sentence s = tokenize(src_lines[i]);
    Sentence t = tokenize(tgt_lines[i]);
    if (s.empty() || t.empty()) {
      std::cerr << "warning: dropping empty pair at line " << i + 1 << "\n";
      continue;
    }
    pairs.emplace_back(std::move(s), std::move(t));
  }
  return build_tm(std::move(pairs));
}

double idf(const TranslationMemory& tm, const Token& term) {
  auto it = tm.doc_freq.find(term);
  int df = it == tm.doc_freq.end() ? 0 : it->second;
  return std::log(static_cast<double>(tm.size() + 1) / (df + 1)) + 1.0;
}

double levenshtein_similarity(const Sentence& x, const Sentence& y) {
  if (x.empty() && y.empty()) throw BothEmpty("both sentences empty");
  int d = edit_distance(x, y);
  auto longest = static_cast<double>(std::max(x.size(), y.size()));
  return 1.0 - d / longest;
}

const char* bucket_name(Bucket b) {
  switch (b) {
    case Bucket::test04: return "test-0.4";
    case Bucket::test06: return "test-0.6";
    case Bucket::discard: return "discard";
  }
  return "?";
}

std::vector<PartitionRow> partition_testset(const std::vector<Sentence>& queries,
                                            const TranslationMemory& tm) {
  if (tm.size() == 0) throw InvalidParams("translation memory is empty");
  std::vector<PartitionRow> rows;
  rows.reserve(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    double best = 0.0;
    for (const auto& e : tm.entries) {
      best = std::max(best, levenshtein_similarity(queries[q], e.source));
      if (best == 1.0) break;
    }
    PartitionRow row;
    row.query_index = static_cast<int>(q);
    row.best_similarity = best;
    row.bucket = best >= 0.6   ? Bucket::test06
                 : best >= 0.4 ? Bucket::test04
                               : Bucket::discard;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tmselect
