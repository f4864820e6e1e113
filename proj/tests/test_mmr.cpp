#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracle_helpers.hpp"
#include "tmselect/errors.hpp"
#include "tmselect/mmr.hpp"

using namespace tmselect;

namespace {

TranslationMemory tiny_tm(std::vector<std::string> sources) {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  for (auto& s : sources) pairs.emplace_back(tokenize(s), tokenize("t"));
  return build_tm(std::move(pairs));
}

std::vector<int> every_id(const TranslationMemory& tm) {
  std::vector<int> ids;
  for (const auto& e : tm.entries) ids.push_back(e.id);
  return ids;
}

std::vector<int> topk_by_similarity(const TranslationMemory& tm, const Sentence& query,
                                    int k) {
  std::vector<std::pair<double, int>> ranked;
  for (const auto& e : tm.entries) {
    ranked.emplace_back(levenshtein_similarity(query, e.source), e.id);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> ids;
  for (int i = 0; i < k && i < static_cast<int>(ranked.size()); ++i) {
    ids.push_back(ranked[i].second);
  }
  return ids;
}

}  // namespace

TEST_CASE("k=1 returns the nearest neighbor") {
  auto tm = tiny_tm({"a b c d", "a b x y", "p q r s"});
  auto query = tokenize("a b c e");
  auto res = mmr_select(query, every_id(tm), tm, 1, {0.3});
  REQUIRE(res.ids.size() == 1);
  CHECK(res.ids[0] == 0);
}

TEST_CASE("alpha=0 disables the diversity penalty") {
  SplitMix64 rng(61);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::pair<Sentence, Sentence>> pairs;
    for (int i = 0; i < 8; ++i) {
      pairs.emplace_back(oracle::random_sentence(rng, 2, 8, 5), tokenize("t"));
    }
    auto tm = build_tm(std::move(pairs));
    auto query = oracle::random_sentence(rng, 2, 8, 5);
    auto res = mmr_select(query, every_id(tm), tm, 3, {0.0});
    CHECK(res.ids == topk_by_similarity(tm, query, 3));
  }
}

TEST_CASE("zero pairwise similarity reduces to top-k for every alpha") {
  // Pairwise-disjoint candidate vocabularies: the redundancy term is 0.
  auto tm = tiny_tm({"a x1 x2", "b y1 y2", "c z1 z2", "w1 w2 w3"});
  auto query = tokenize("a b c");
  for (double alpha : {0.0, 0.3, 0.7}) {
    auto res = mmr_select(query, every_id(tm), tm, 3, {alpha});
    auto expect = topk_by_similarity(tm, query, 3);
    CHECK(res.ids == expect);
  }
}

TEST_CASE("redundancy pushes near-duplicates out") {
  auto tm = tiny_tm({
      "a b c d e",  // closest to the query
      "a b c d f",  // near-duplicate of 0, second-closest to the query
      "p q c d r",  // farther from the query but unlike 0
  });
  auto query = tokenize("a b c d e g");
  auto res = mmr_select(query, every_id(tm), tm, 2, {0.5});
  REQUIRE(res.ids.size() == 2);
  CHECK(res.ids[0] == 0);
  CHECK(res.ids[1] == 2);  // -0.033 beats the near-duplicate's -0.067

  auto pure = mmr_select(query, every_id(tm), tm, 2, {0.0});
  CHECK(pure.ids == std::vector<int>{0, 1});
}

TEST_CASE("selection is valid and deterministic") {
  SplitMix64 rng(67);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::pair<Sentence, Sentence>> pairs;
    for (int i = 0; i < 10; ++i) {
      pairs.emplace_back(oracle::random_sentence(rng, 2, 8, 4), tokenize("t"));
    }
    auto tm = build_tm(std::move(pairs));
    auto query = oracle::random_sentence(rng, 2, 8, 4);
    auto a = mmr_select(query, every_id(tm), tm, 4, {0.3});
    auto b = mmr_select(query, every_id(tm), tm, 4, {0.3});
    CHECK(a.ids == b.ids);
    CHECK(a.ids.size() == 4);
    auto sorted = a.ids;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
}

TEST_CASE("k larger than the pool returns the whole pool") {
  auto tm = tiny_tm({"a b", "a c"});
  auto res = mmr_select(tokenize("a"), every_id(tm), tm, 10, {0.3});
  CHECK(res.ids.size() == 2);
}

TEST_CASE("input validation") {
  auto tm = tiny_tm({"a b"});
  CHECK_THROWS_AS(mmr_select(tokenize("a"), {}, tm, 1, {0.3}), EmptyPool);
  CHECK_THROWS_AS(mmr_select(tokenize("a"), {0}, tm, 0, {0.3}), InvalidParams);
  CHECK_THROWS_AS(mmr_select(tokenize("a"), {0}, tm, 1, {1.5}), InvalidParams);
  CHECK_THROWS_AS(mmr_select(tokenize("a"), {5}, tm, 1, {0.3}), UnknownId);
}
