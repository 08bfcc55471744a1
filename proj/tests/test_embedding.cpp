#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hype/embedding.hpp"

using namespace hype;

TEST_SUITE("embedding") {

TEST_CASE("fnv1a64 reference values") {
  // frozen from an independent FNV-1a implementation
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("abc") == 16654208175385433931ull);
  CHECK(fnv1a64("dub") == 14583840974136706288ull);
}

TEST_CASE("embed degenerate inputs give the zero vector") {
  NgramHashEncoder enc(1024);
  for (const std::string text : {"", "  ", "ab", " a \n"}) {
    EmbeddingVector v = enc.embed(text);
    CHECK(std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }));
  }
}

TEST_CASE("a single 3-gram lands in its FNV bucket") {
  NgramHashEncoder enc(1024);
  EmbeddingVector v = enc.embed("dub");
  // 14583840974136706288 % 1024 == 240
  CHECK(v[240] == doctest::Approx(1.0).epsilon(1e-12));
  int nonzero = 0;
  for (double x : v) nonzero += x != 0.0;
  CHECK(nonzero == 1);
}

TEST_CASE("nonzero embeddings are unit norm") {
  NgramHashEncoder enc(1024);
  for (const std::string text : {"dubai economy", "Sun", "stellar evolution models"}) {
    EmbeddingVector v = enc.embed(text);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
  }
}

TEST_CASE("embed is case-insensitive and pure") {
  NgramHashEncoder enc(256);
  CHECK(enc.embed("Dubai Economy") == enc.embed("dubai economy"));
  CHECK(enc.embed("dubai economy") == enc.embed("dubai economy"));
}

TEST_CASE("cosine basics") {
  NgramHashEncoder enc(1024);
  EmbeddingVector v = enc.embed("dubai economy");
  CHECK(cosine(v, v) == doctest::Approx(1.0).epsilon(1e-9));

  EmbeddingVector zero(1024, 0.0);
  CHECK(cosine(zero, v) == 0.0);

  EmbeddingVector e1(8, 0.0), e2(8, 0.0);
  e1[0] = 1.0;
  e2[3] = 1.0;
  CHECK(cosine(e1, e2) == 0.0);

  EmbeddingVector small(4, 0.0);
  CHECK_THROWS_AS(cosine(small, v), std::runtime_error);
}

TEST_CASE("top_k caps and tie-breaks") {
  NgramHashEncoder enc(512);
  std::vector<std::pair<std::string, std::string>> items = {{"a", "solar power"},
                                                            {"b", "wind power"}};
  auto all = top_k(enc, "solar", items, 10);
  CHECK(all.size() == 2);

  auto single = top_k(enc, "anything", {{"only", "text"}}, 3);
  REQUIRE(single.size() == 1);
  CHECK(single[0].id == "only");

  // identical texts force a score tie; ids break it
  auto tied = top_k(enc, "query", {{"z", "same text"}, {"a", "same text"}}, 2);
  REQUIRE(tied.size() == 2);
  CHECK(tied[0].id == "a");
  CHECK(tied[1].id == "z");

  CHECK(top_k(enc, "query", {}, 4).empty());
}

TEST_CASE("top_k matches a brute-force similarity sort") {
  NgramHashEncoder enc(512);
  std::vector<std::pair<std::string, std::string>> items = {
      {"i1", "solar energy conversion"},
      {"i2", "wind turbines"},
      {"i3", "solar panels for homes"},
      {"i4", "ancient history"},
      {"i5", "energy storage systems"}};
  const std::string query = "solar energy";

  // independent oracle: score every item and sort
  EmbeddingVector q = enc.embed(query);
  std::vector<std::pair<double, std::string>> oracle;
  for (const auto& [id, text] : items) {
    oracle.emplace_back(cosine(q, enc.embed(text)), id);
  }
  std::sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  auto got = top_k(enc, query, items, 2);
  REQUIRE(got.size() == 2);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].id == oracle[i].second);
    CHECK(got[i].score == doctest::Approx(oracle[i].first).epsilon(1e-12));
  }

  // top-k output is a prefix of top-(k+1)
  auto wider = top_k(enc, query, items, 3);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(wider[i].id == got[i].id);
  }
}

}  // TEST_SUITE
