#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace hype {

// A root-to-node chain of category names, e.g. {"Economy", "Economy by cities"}.
// The root itself is never part of a path.
struct CategoryPath {
  std::vector<std::string> segments;

  CategoryPath() = default;
  explicit CategoryPath(std::vector<std::string> segs) : segments(std::move(segs)) {}

  bool empty() const { return segments.empty(); }
  std::size_t depth() const { return segments.size(); }

  friend auto operator<=>(const CategoryPath&, const CategoryPath&) = default;
};

// Joins segments with " > ". Requires a nonempty path.
std::string linearize(const CategoryPath& path);

// Inverse of linearize: splits on '>' and trims each segment.
// Throws std::runtime_error on empty input or an empty segment.
CategoryPath parse_path(const std::string& text);

// Category hierarchy with a designated root node. The graph may be a DAG
// (a category can hang under several parents); children keep first-seen order.
class Taxonomy {
 public:
  Taxonomy() = default;
  Taxonomy(std::string root_name, int max_depth);

  void add_edge(const std::string& parent, const std::string& child);

  const std::string& root_name() const { return root_name_; }
  int max_depth() const { return max_depth_; }
  const std::vector<std::string>& children(const std::string& parent) const;
  bool has_children(const std::string& parent) const;

  // Number of root-to-node path occurrences within the depth cap; a node
  // reachable through two parent chains counts twice.
  std::size_t node_count() const;

  // Checks depth-capped acyclicity and that at least one node is reachable.
  // Throws std::runtime_error naming the offending node on a cycle.
  void validate() const;

 private:
  std::string root_name_;
  int max_depth_ = 4;
  std::map<std::string, std::vector<std::string>> edges_;
};

// Loads a taxonomy from either a path-per-line text file ("A > B" per line)
// or a JSON edge list ([{"parent": ..., "child": ...}, ...]). Names are
// trimmed; the graph is validated within max_depth.
Taxonomy load_taxonomy(const std::string& file_path, int max_depth = 4,
                       const std::string& root_name = "Main topic classifications");

// Every root-to-node path of length 1..max_depth, root excluded, exact
// duplicates removed, ordered by depth then lexicographically by segments.
std::vector<CategoryPath> enumerate_paths(const Taxonomy& t, int max_depth);

}  // namespace hype
