#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracle_helpers.hpp"
#include "tmselect/bm25.hpp"
#include "tmselect/errors.hpp"

using namespace tmselect;

namespace {

TranslationMemory tiny_tm(std::vector<std::string> sources) {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  for (auto& s : sources) pairs.emplace_back(tokenize(s), tokenize("t"));
  return build_tm(std::move(pairs));
}

TranslationMemory random_tm(SplitMix64& rng, int entries, int vocab) {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  for (int i = 0; i < entries; ++i) {
    pairs.emplace_back(oracle::random_sentence(rng, 1, 12, vocab), tokenize("t"));
  }
  return build_tm(std::move(pairs));
}

}  // namespace

TEST_CASE("build_index counts postings and lengths") {
  auto tm = tiny_tm({"a b", "a"});
  auto index = build_index(tm);
  REQUIRE(index.size() == 2);
  CHECK(index.entry_lengths == std::vector<int>{2, 1});
  CHECK(index.avg_length == doctest::Approx(1.5));
  REQUIRE(index.postings.at("a").size() == 2);
  CHECK(index.postings.at("a")[0].entry_id == 0);
  CHECK(index.postings.at("a")[1].entry_id == 1);
  CHECK(index.postings.at("b").size() == 1);
  CHECK(index.postings.count("zzz") == 0);
}

TEST_CASE("build_index validates parameters") {
  auto tm = tiny_tm({"a"});
  CHECK_THROWS_AS(build_index(tm, {0.0, 0.5}), InvalidParams);
  CHECK_THROWS_AS(build_index(tm, {1.2, 1.5}), InvalidParams);
  CHECK_THROWS_AS(build_index(TranslationMemory{}, {}), InvalidParams);
}

TEST_CASE("top_t basics") {
  auto tm = tiny_tm({"a b c", "a b", "x y"});
  auto index = build_index(tm);

  SUBCASE("no shared term gives an empty pool") {
    auto pool = top_t(index, tokenize("q r s"), 10);
    CHECK(pool.ids.empty());
  }
  SUBCASE("exact source wins at capacity 1") {
    auto pool = top_t(index, tokenize("a b c"), 1);
    REQUIRE(pool.ids.size() == 1);
    CHECK(pool.ids[0] == 0);
  }
  SUBCASE("capacity above pool size returns everything matching") {
    auto pool = top_t(index, tokenize("a"), 50);
    CHECK(pool.ids.size() == 2);
  }
  SUBCASE("empty query is rejected") {
    CHECK_THROWS_AS(top_t(index, {}, 5), EmptyQuery);
    CHECK_THROWS_AS(top_t(index, tokenize("a"), 0), InvalidParams);
  }
}

TEST_CASE("top_t agrees exactly with the brute-force scorer") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    auto tm = random_tm(rng, 2 + static_cast<int>(rng.below(48)), 10);
    auto index = build_index(tm);
    auto query = oracle::random_sentence(rng, 1, 8, 10);
    int capacity = 1 + static_cast<int>(rng.below(20));
    auto pool = top_t(index, query, capacity);
    auto brute = oracle::brute_bm25(tm, query, 1.2, 0.75, capacity);
    REQUIRE(pool.ids.size() == brute.size());
    for (std::size_t i = 0; i < brute.size(); ++i) {
      CHECK(pool.ids[i] == brute[i].id);
      CHECK(pool.scores[i] == brute[i].score);
    }
    for (std::size_t i = 1; i < pool.scores.size(); ++i) {
      CHECK(pool.scores[i] <= pool.scores[i - 1]);
    }
  }
}

TEST_CASE("an entry sharing no query term never enters the pool") {
  // Corpus-level statistics (size, average length) shift when any entry is
  // added, so individual scores and even ranks can move; what stays fixed
  // is the candidate membership: zero-overlap entries score 0 and stay out,
  // everything that matched before still matches.
  SplitMix64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto tm = random_tm(rng, 3 + static_cast<int>(rng.below(15)), 8);
    auto query = oracle::random_sentence(rng, 1, 6, 8);
    auto before = top_t(build_index(tm), query, 50);

    std::vector<std::pair<Sentence, Sentence>> pairs;
    for (const auto& e : tm.entries) pairs.emplace_back(e.source, e.target);
    Sentence unrelated;
    for (int i = 0; i < 5; ++i) unrelated.push_back("unrelated" + std::to_string(i));
    pairs.emplace_back(unrelated, tokenize("t"));
    auto after = top_t(build_index(build_tm(std::move(pairs))), query, 50);

    std::set<int> before_set(before.ids.begin(), before.ids.end());
    std::set<int> after_set(after.ids.begin(), after.ids.end());
    CHECK(before_set == after_set);
  }
}

TEST_CASE("index round-trips through the versioned dump") {
  TranslationMemory tm = tiny_tm({"le chat dort .", "le chien court .", "un chat noir ."});
  Bm25Params params{1.6, 0.6};
  auto dir = std::filesystem::temp_directory_path() /
             ("tmselect_bm25_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = (dir / "index.tsv").string();

  save_index(tm, params, path);
  auto loaded = load_index(path);
  CHECK(loaded.index.params.k1 == params.k1);
  CHECK(loaded.index.params.b == params.b);
  REQUIRE(loaded.tm.size() == tm.size());

  {
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == kIndexMagic);
  }

  auto original = build_index(tm, params);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto query = oracle::random_sentence(rng, 1, 5, 6);
    Sentence mixed = query;
    mixed.push_back("chat");
    auto a = top_t(original, mixed, 10);
    auto b = top_t(loaded.index, mixed, 10);
    CHECK(a.ids == b.ids);
    CHECK(a.scores == b.scores);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_index rejects foreign files") {
  auto dir = std::filesystem::temp_directory_path() /
             ("tmselect_bm25_bad_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = (dir / "bogus.tsv").string();
  {
    std::ofstream out(path);
    out << "NOT-AN-INDEX\n";
  }
  CHECK_THROWS_AS(load_index(path), IoError);
  std::filesystem::remove_all(dir);
}
