#include "hype/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hype {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string linearize(const CategoryPath& path) {
  if (path.empty()) throw std::runtime_error("linearize: empty path");
  std::string out;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    if (i > 0) out += " > ";
    out += path.segments[i];
  }
  return out;
}

CategoryPath parse_path(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::runtime_error("parse_path: empty input");
  if (s.back() == '>') {
    throw std::runtime_error("parse_path: empty segment in \"" + text + "\"");
  }
  CategoryPath path;
  std::string segment;
  std::stringstream in(s);
  while (std::getline(in, segment, '>')) {
    std::string name = trim(segment);
    if (name.empty()) {
      throw std::runtime_error("parse_path: empty segment in \"" + text + "\"");
    }
    path.segments.push_back(std::move(name));
  }
  return path;
}

Taxonomy::Taxonomy(std::string root_name, int max_depth)
    : root_name_(std::move(root_name)), max_depth_(max_depth) {
  if (max_depth_ < 1) throw std::runtime_error("taxonomy: max_depth must be >= 1");
}

void Taxonomy::add_edge(const std::string& parent, const std::string& child) {
  if (parent.empty() || child.empty()) {
    throw std::runtime_error("taxonomy: empty category name");
  }
  auto& siblings = edges_[parent];
  if (std::find(siblings.begin(), siblings.end(), child) == siblings.end()) {
    siblings.push_back(child);
  }
}

const std::vector<std::string>& Taxonomy::children(const std::string& parent) const {
  static const std::vector<std::string> kNone;
  auto it = edges_.find(parent);
  return it == edges_.end() ? kNone : it->second;
}

bool Taxonomy::has_children(const std::string& parent) const {
  auto it = edges_.find(parent);
  return it != edges_.end() && !it->second.empty();
}

namespace {

void walk(const Taxonomy& t, const std::string& node, int remaining,
          std::vector<std::string>& chain,
          const std::function<void(const std::vector<std::string>&)>& visit) {
  if (remaining == 0) return;
  for (const auto& child : t.children(node)) {
    if (std::find(chain.begin(), chain.end(), child) != chain.end() ||
        child == t.root_name()) {
      throw std::runtime_error("taxonomy: cycle through \"" + child + "\"");
    }
    chain.push_back(child);
    visit(chain);
    walk(t, child, remaining - 1, chain, visit);
    chain.pop_back();
  }
}

}  // namespace

std::size_t Taxonomy::node_count() const {
  std::size_t n = 0;
  std::vector<std::string> chain;
  walk(*this, root_name_, max_depth_, chain, [&](const auto&) { ++n; });
  return n;
}

void Taxonomy::validate() const {
  if (node_count() == 0) {
    throw std::runtime_error("taxonomy: no categories reachable from root \"" +
                             root_name_ + "\"");
  }
}

Taxonomy load_taxonomy(const std::string& file_path, int max_depth,
                       const std::string& root_name) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open taxonomy file: " + file_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string content = buffer.str();

  Taxonomy t(root_name, max_depth);
  auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    throw std::runtime_error("taxonomy file is empty: " + file_path);
  }

  if (content[first] == '[') {
    auto doc = nlohmann::json::parse(content);
    if (!doc.is_array() || doc.empty()) {
      throw std::runtime_error("taxonomy edge list is empty: " + file_path);
    }
    for (const auto& edge : doc) {
      std::string parent = trim(edge.at("parent").get<std::string>());
      std::string child = trim(edge.at("child").get<std::string>());
      if (parent == child) {
        throw std::runtime_error("taxonomy: cycle through \"" + child + "\"");
      }
      t.add_edge(parent, child);
    }
  } else {
    std::stringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
      if (trim(line).empty()) continue;
      CategoryPath path = parse_path(line);
      std::string parent = root_name;
      for (const auto& segment : path.segments) {
        if (segment == parent) {
          throw std::runtime_error("taxonomy: cycle through \"" + segment + "\"");
        }
        t.add_edge(parent, segment);
        parent = segment;
      }
    }
  }

  t.validate();
  return t;
}

std::vector<CategoryPath> enumerate_paths(const Taxonomy& t, int max_depth) {
  if (max_depth < 1) throw std::runtime_error("enumerate_paths: max_depth must be >= 1");
  std::set<CategoryPath> unique;
  std::vector<std::string> chain;
  walk(t, t.root_name(), std::min(max_depth, t.max_depth()), chain,
       [&](const std::vector<std::string>& c) { unique.insert(CategoryPath{c}); });

  std::vector<CategoryPath> out(unique.begin(), unique.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const CategoryPath& a, const CategoryPath& b) {
                     if (a.depth() != b.depth()) return a.depth() < b.depth();
                     return a.segments < b.segments;
                   });
  return out;
}

}  // namespace hype
