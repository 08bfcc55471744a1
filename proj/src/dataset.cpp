#include "hype/dataset.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hype {

using nlohmann::json;

std::string to_string(ExampleKind kind) {
  switch (kind) {
    case ExampleKind::retrieval: return "retrieval";
    case ExampleKind::indexing_firstp: return "indexing-firstp";
    case ExampleKind::indexing_synthetic: return "indexing-synthetic";
  }
  return "retrieval";
}

ExampleKind example_kind_from_string(const std::string& name) {
  if (name == "retrieval") return ExampleKind::retrieval;
  if (name == "indexing-firstp") return ExampleKind::indexing_firstp;
  if (name == "indexing-synthetic") return ExampleKind::indexing_synthetic;
  throw std::runtime_error("unknown example kind: " + name);
}

void save_examples(const std::vector<PathAugmentedExample>& examples,
                   const std::string& file_path) {
  std::ofstream out(file_path);
  if (!out) throw std::runtime_error("cannot write dataset: " + file_path);
  for (const auto& ex : examples) {
    json rec;
    rec["input"] = ex.input;
    rec["target_path"] = linearize(ex.target_path);
    rec["target_docid"] = ex.target_docid;
    rec["kind"] = to_string(ex.kind);
    out << rec.dump() << "\n";
  }
}

std::vector<PathAugmentedExample> load_examples(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open dataset: " + file_path);

  std::vector<PathAugmentedExample> examples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error(file_path + " line " + std::to_string(line_no) + ": " +
                               e.what());
    }
    PathAugmentedExample ex;
    ex.input = rec.at("input").get<std::string>();
    ex.target_path = parse_path(rec.at("target_path").get<std::string>());
    ex.target_docid = rec.at("target_docid").get<std::vector<std::string>>();
    ex.kind = example_kind_from_string(rec.at("kind").get<std::string>());
    examples.push_back(std::move(ex));
  }
  return examples;
}

}  // namespace hype
