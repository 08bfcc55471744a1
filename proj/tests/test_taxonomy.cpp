#include <doctest.h>

#include <set>

#include "hype/taxonomy.hpp"
#include "support/tempdir.hpp"

using namespace hype;
using hype::testing::TempDir;
using hype::testing::write_file;

TEST_SUITE("taxonomy") {

TEST_CASE("linearize joins segments with the delimiter") {
  CHECK(linearize(CategoryPath{{"Economy", "Economy by cities"}}) ==
        "Economy > Economy by cities");
  CHECK(linearize(CategoryPath{{"universe", "energy", "energy conversion"}}) ==
        "universe > energy > energy conversion");
  CHECK(linearize(CategoryPath{{"X"}}) == "X");
  CHECK_THROWS_AS(linearize(CategoryPath{}), std::runtime_error);
}

TEST_CASE("parse_path splits and trims") {
  CategoryPath p = parse_path("nature > evolution > stellar evolution");
  REQUIRE(p.depth() == 3);
  CHECK(p.segments[0] == "nature");
  CHECK(p.segments[1] == "evolution");
  CHECK(p.segments[2] == "stellar evolution");

  CHECK(parse_path("  A  >  B ") == CategoryPath{{"A", "B"}});
  CHECK_THROWS_AS(parse_path("A >  > B"), std::runtime_error);
  CHECK_THROWS_AS(parse_path(""), std::runtime_error);
  CHECK_THROWS_AS(parse_path("A >"), std::runtime_error);
  CHECK_THROWS_AS(parse_path("> A"), std::runtime_error);
}

TEST_CASE("load_taxonomy from an edge list") {
  TempDir dir;
  write_file(dir.file("t.json"),
             R"([{"parent": "Main", "child": "Science"},)"
             R"( {"parent": "Science", "child": "Branches of science"}])");
  Taxonomy t = load_taxonomy(dir.file("t.json"), 4, "Main");
  auto paths = enumerate_paths(t, 4);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0] == CategoryPath{{"Science"}});
  CHECK(paths[1] == CategoryPath{{"Science", "Branches of science"}});
}

TEST_CASE("load_taxonomy from linearized paths") {
  TempDir dir;
  write_file(dir.file("t.txt"), "Government > Government by cities\n");
  Taxonomy t = load_taxonomy(dir.file("t.txt"), 4);
  auto paths = enumerate_paths(t, 4);
  REQUIRE(paths.size() == 2);
  CHECK(linearize(paths[0]) == "Government");
  CHECK(linearize(paths[1]) == "Government > Government by cities");
}

TEST_CASE("self-loop is rejected as a cycle") {
  TempDir dir;
  write_file(dir.file("t.json"), R"([{"parent": "A", "child": "A"}])");
  CHECK_THROWS_WITH_AS(load_taxonomy(dir.file("t.json"), 4, "Main"),
                       doctest::Contains("cycle"), std::runtime_error);
}

TEST_CASE("cycle within the depth limit names the offending node") {
  TempDir dir;
  write_file(dir.file("t.json"),
             R"([{"parent": "Main", "child": "B"},)"
             R"( {"parent": "B", "child": "C"},)"
             R"( {"parent": "C", "child": "B"}])");
  CHECK_THROWS_WITH_AS(load_taxonomy(dir.file("t.json"), 4, "Main"),
                       doctest::Contains("B"), std::runtime_error);
}

TEST_CASE("cycle beyond the depth cap is ignored") {
  TempDir dir;
  write_file(dir.file("t.json"),
             R"([{"parent": "Main", "child": "B"},)"
             R"( {"parent": "B", "child": "C"},)"
             R"( {"parent": "C", "child": "B"}])");
  Taxonomy t = load_taxonomy(dir.file("t.json"), 2, "Main");
  CHECK(enumerate_paths(t, 2).size() == 2);
}

TEST_CASE("empty file is rejected") {
  TempDir dir;
  write_file(dir.file("t.txt"), "\n  \n");
  CHECK_THROWS_AS(load_taxonomy(dir.file("t.txt"), 4), std::runtime_error);
}

TEST_CASE("enumerate_paths on a chain") {
  Taxonomy t("root", 4);
  t.add_edge("root", "A");
  t.add_edge("A", "B");

  auto all = enumerate_paths(t, 4);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == CategoryPath{{"A"}});
  CHECK(all[1] == CategoryPath{{"A", "B"}});

  auto capped = enumerate_paths(t, 1);
  REQUIRE(capped.size() == 1);
  CHECK(capped[0] == CategoryPath{{"A"}});
}

TEST_CASE("enumerate_paths on a branching-2 depth-3 tree") {
  // brute-force oracle: node count 2 + 4 + 8 = 14, one path per node
  Taxonomy t("root", 3);
  std::vector<std::string> level1 = {"a", "b"};
  for (const auto& n1 : level1) {
    t.add_edge("root", n1);
    for (const auto& s2 : {"x", "y"}) {
      std::string n2 = n1 + s2;
      t.add_edge(n1, n2);
      for (const auto& s3 : {"p", "q"}) {
        t.add_edge(n2, n2 + s3);
      }
    }
  }

  auto paths = enumerate_paths(t, 3);
  CHECK(paths.size() == 14);
  CHECK(paths.size() == t.node_count());

  // depth ascending, then lexicographic; depth bounded by the cap
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CHECK(paths[i].depth() >= 1);
    CHECK(paths[i].depth() <= 3);
    if (i > 0) {
      bool ordered = paths[i - 1].depth() < paths[i].depth() ||
                     (paths[i - 1].depth() == paths[i].depth() &&
                      paths[i - 1].segments < paths[i].segments);
      CHECK(ordered);
    }
  }

  // parse_path ∘ linearize is the identity on every enumerated path
  for (const auto& p : paths) {
    CHECK(parse_path(linearize(p)) == p);
  }
}

TEST_CASE("a node under two parents yields one path per chain") {
  Taxonomy t("root", 4);
  t.add_edge("root", "A");
  t.add_edge("root", "B");
  t.add_edge("A", "Shared");
  t.add_edge("B", "Shared");

  auto paths = enumerate_paths(t, 4);
  std::set<std::string> linearized;
  for (const auto& p : paths) linearized.insert(linearize(p));
  CHECK(linearized.count("A > Shared") == 1);
  CHECK(linearized.count("B > Shared") == 1);
  CHECK(paths.size() == 4);
}

}  // TEST_SUITE
