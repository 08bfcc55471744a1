#include <doctest.h>

#include <random>
#include <set>

#include "hype/corpus.hpp"
#include "hype/scorer.hpp"
#include "hype/trie.hpp"
#include "support/tempdir.hpp"

using namespace hype;
using hype::testing::TempDir;
using hype::testing::read_file;
using hype::testing::write_file;

TEST_SUITE("corpus") {

TEST_CASE("ingest loads documents and queries") {
  TempDir dir;
  write_file(dir.file("corpus.jsonl"),
             R"({"doc_id": "d1", "title": "Sun", "text": "The Sun is a star."})"
             "\n"
             R"({"doc_id": "d2", "title": null, "text": "Dubai is a city.", "synthetic_queries": ["dubai?"]})"
             "\n");
  write_file(dir.file("queries.jsonl"),
             R"({"query_id": "q1", "text": "what is the sun", "gold_docid": "d1"})"
             "\n");

  auto [docs, queries] = ingest_corpus(dir.file("corpus.jsonl"), dir.file("queries.jsonl"));
  REQUIRE(docs.size() == 2);
  REQUIRE(queries.size() == 1);
  CHECK(docs[0].title.has_value());
  CHECK_FALSE(docs[1].title.has_value());
  CHECK(docs[1].synthetic_queries.size() == 1);
  CHECK(queries[0].gold_docid == "d1");
}

TEST_CASE("ingest rejects duplicates, dangling gold ids and bad lines") {
  TempDir dir;
  write_file(dir.file("dup.jsonl"),
             R"({"doc_id": "d1", "text": "a b c"})"
             "\n"
             R"({"doc_id": "d1", "text": "d e f"})"
             "\n");
  write_file(dir.file("q.jsonl"), "");
  CHECK_THROWS_WITH_AS(ingest_corpus(dir.file("dup.jsonl"), dir.file("q.jsonl")),
                       doctest::Contains("duplicate"), std::runtime_error);

  write_file(dir.file("ok.jsonl"), R"({"doc_id": "d1", "text": "a b c"})"
                                   "\n");
  write_file(dir.file("dangling.jsonl"),
             R"({"query_id": "q7", "text": "hi", "gold_docid": "nope"})"
             "\n");
  CHECK_THROWS_WITH_AS(ingest_corpus(dir.file("ok.jsonl"), dir.file("dangling.jsonl")),
                       doctest::Contains("q7"), std::runtime_error);

  write_file(dir.file("bad.jsonl"), "{\"doc_id\": \"d1\", \"text\": \"a\"}\nnot json\n");
  CHECK_THROWS_WITH_AS(load_documents(dir.file("bad.jsonl")), doctest::Contains("line 2"),
                       std::runtime_error);
}

TEST_CASE("atomic docids are fresh single tokens") {
  std::vector<Document> docs = {{"d1", {}, "alpha", {}},
                                {"d2", {}, "beta", {}},
                                {"d3", {}, "gamma", {}}};
  DocidTable table = assign_docids(docs, DocidScheme::atomic);
  REQUIRE(table.entries.size() == 3);
  CHECK(table.entries["d1"] == std::vector<std::string>{"doc_d1"});
  CHECK(table.entries["d2"] == std::vector<std::string>{"doc_d2"});
  CHECK(table.entries["d3"] == std::vector<std::string>{"doc_d3"});
}

TEST_CASE("title collisions get disambiguator tokens in doc_id order") {
  std::vector<Document> docs = {{"d2", "Sun", "second doc", {}},
                                {"d1", "Sun", "first doc", {}}};
  DocidTable table = assign_docids(docs, DocidScheme::title);
  CHECK(table.entries["d1"] == std::vector<std::string>{"sun"});
  CHECK(table.entries["d2"] == std::vector<std::string>{"sun", "#2"});
}

TEST_CASE("title scheme falls back to the first 16 text tokens") {
  std::string text;
  for (int i = 0; i < 20; ++i) text += "w" + std::to_string(i) + " ";
  std::vector<Document> docs = {{"d1", {}, text, {}}};
  DocidTable table = assign_docids(docs, DocidScheme::title);
  REQUIRE(table.entries["d1"].size() == 16);
  CHECK(table.entries["d1"].front() == "w0");
  CHECK(table.entries["d1"].back() == "w15");
}

TEST_CASE("keyword docids match a hand TF-IDF computation") {
  // oracle: tf * ln(N/df), ties by term ascending; frozen from an
  // independent computation over this 5-doc corpus
  std::vector<Document> docs = {{"d1", {}, "sun star fusion sun", {}},
                                {"d2", {}, "moon orbit sun", {}},
                                {"d3", {}, "star cluster galaxy galaxy", {}},
                                {"d4", {}, "galaxy core fusion", {}},
                                {"d5", {}, "comet ice orbit", {}}};
  DocidTable table = assign_docids(docs, DocidScheme::keyword);
  CHECK(table.entries["d1"] == std::vector<std::string>{"sun", "fusion", "star"});
  CHECK(table.entries["d2"] == std::vector<std::string>{"moon", "orbit", "sun"});
  CHECK(table.entries["d3"] == std::vector<std::string>{"galaxy", "cluster", "star"});
  CHECK(table.entries["d4"] == std::vector<std::string>{"core", "fusion", "galaxy"});
  CHECK(table.entries["d5"] == std::vector<std::string>{"comet", "ice", "orbit"});
}

TEST_CASE("summary docids take the first sentence capped at 24 tokens") {
  std::vector<Document> docs = {
      {"d1", {}, "The Sun is a star. It sits at the center.", {}},
      {"d2", {}, "No terminator here just words", {}}};
  DocidTable table = assign_docids(docs, DocidScheme::summary);
  CHECK(table.entries["d1"] == std::vector<std::string>{"the", "sun", "is", "a", "star"});
  CHECK(table.entries["d2"] ==
        std::vector<std::string>{"no", "terminator", "here", "just", "words"});

  std::string longhead;
  for (int i = 0; i < 30; ++i) longhead += "t" + std::to_string(i) + " ";
  std::vector<Document> docs2 = {{"d1", {}, longhead + ".", {}}};
  CHECK(assign_docids(docs2, DocidScheme::summary).entries["d1"].size() == 24);
}

TEST_CASE("assign_docids is deterministic and injective") {
  std::vector<Document> docs;
  for (int i = 0; i < 40; ++i) {
    // every fourth doc shares a title to force collisions
    docs.push_back({"doc" + std::to_string(i), "Shared Title " + std::to_string(i % 4),
                    "body " + std::to_string(i), {}});
  }
  for (auto scheme : {DocidScheme::title, DocidScheme::keyword, DocidScheme::summary,
                      DocidScheme::atomic}) {
    DocidTable a = assign_docids(docs, scheme);
    DocidTable b = assign_docids(docs, scheme);
    CHECK(a.entries == b.entries);

    std::set<std::vector<std::string>> unique;
    for (const auto& [_, toks] : a.entries) unique.insert(toks);
    CHECK(unique.size() == docs.size());
  }
}

TEST_CASE("docid table round-trips byte-identically") {
  std::vector<Document> docs = {{"d1", "Sun", "a b", {}}, {"d2", "Moon", "c d", {}}};
  DocidTable table = assign_docids(docs, DocidScheme::title);

  TempDir dir;
  table.save(dir.file("docids.json"));
  DocidTable loaded = DocidTable::load(dir.file("docids.json"));
  CHECK(loaded.scheme == table.scheme);
  CHECK(loaded.entries == table.entries);

  loaded.save(dir.file("docids2.json"));
  CHECK(read_file(dir.file("docids.json")) == read_file(dir.file("docids2.json")));
}

TEST_CASE("trie stores sequences and payloads") {
  TokenTrie trie = build_trie({{{"dubai"}, "d1"}, {{"dublin"}, "d2"}});
  CHECK(trie.root()->children.size() == 2);
  CHECK(trie.accepts({"dubai"}));
  CHECK(trie.accepts({"dublin"}));
  CHECK_FALSE(trie.accepts({"dub"}));
}

TEST_CASE("a prefix word is separated by the end token") {
  TokenTrie trie = build_trie({{{"a", "b"}, "p1"}, {{"a"}, "p2"}});
  CHECK(trie.accepts({"a"}));
  CHECK(trie.accepts({"a", "b"}));
  const auto* after_a = trie.walk({"a"});
  REQUIRE(after_a != nullptr);
  CHECK(after_a->children.count(kEndToken) == 1);
  CHECK(after_a->children.count("b") == 1);
}

TEST_CASE("duplicate sequences with different payloads are rejected") {
  CHECK_THROWS_AS(build_trie({{{"a"}, "p1"}, {{"a"}, "p2"}}), std::runtime_error);
  CHECK_NOTHROW(build_trie({{{"a"}, "p1"}, {{"a"}, "p1"}}));
  CHECK_THROWS_AS(build_trie({}), std::runtime_error);
  CHECK_THROWS_AS(build_trie({{{}, "p"}}), std::runtime_error);
}

TEST_CASE("trie accepted language equals the input set") {
  // 200 generated docid-like sequences plus 200 negatives
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> word(0, 29);

  std::set<std::vector<std::string>> inputs;
  while (inputs.size() < 200) {
    std::vector<std::string> seq;
    int n = len(rng);
    for (int i = 0; i < n; ++i) seq.push_back("w" + std::to_string(word(rng)));
    inputs.insert(seq);
  }

  std::vector<std::pair<std::vector<std::string>, std::string>> entries;
  int id = 0;
  for (const auto& seq : inputs) entries.emplace_back(seq, "d" + std::to_string(id++));
  TokenTrie trie = build_trie(entries);
  CHECK(trie.word_count() == inputs.size());

  for (const auto& seq : inputs) CHECK(trie.accepts(seq));

  int negatives = 0;
  while (negatives < 200) {
    std::vector<std::string> seq;
    int n = len(rng);
    for (int i = 0; i < n; ++i) seq.push_back("w" + std::to_string(word(rng)));
    if (inputs.count(seq)) continue;
    CHECK_FALSE(trie.accepts(seq));
    ++negatives;
  }

  // words() round-trips the input set
  auto words = trie.words();
  CHECK(words.size() == inputs.size());
  for (const auto& [seq, payload] : words) {
    CHECK(inputs.count(seq) == 1);
  }
}

}  // TEST_SUITE
