#pragma once

#include <string>
#include <vector>

#include "hype/taxonomy.hpp"

namespace hype {

enum class ExampleKind { retrieval, indexing_firstp, indexing_synthetic };

std::string to_string(ExampleKind kind);
ExampleKind example_kind_from_string(const std::string& name);

// One row of the path-augmented training set: a retrieval example maps a
// query to (linked path, docid); indexing examples map a document
// representation (FirstP prefix or a synthetic query) to the same target.
struct PathAugmentedExample {
  std::string input;
  CategoryPath target_path;
  std::vector<std::string> target_docid;
  ExampleKind kind = ExampleKind::retrieval;
};

void save_examples(const std::vector<PathAugmentedExample>& examples,
                   const std::string& file_path);
std::vector<PathAugmentedExample> load_examples(const std::string& file_path);

}  // namespace hype
