#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hype/corpus.hpp"
#include "hype/dataset.hpp"
#include "hype/embedding.hpp"
#include "hype/selector.hpp"
#include "hype/taxonomy.hpp"

namespace hype {

// Up to three category paths chosen to represent one document.
struct CandidatePathSet {
  std::string doc_id;
  std::vector<CategoryPath> paths;  // 1..3, subset of the pre-candidates
  std::string provenance;           // "external-selector" | "fallback"
};

// Embedding input for a document: title plus the first 256 characters of text.
std::string document_repr(const Document& doc);

// Top-k taxonomy paths by similarity between the document representation and
// each linearized path; score descending.
std::vector<std::pair<CategoryPath, double>> precandidates(
    const TextEncoder& encoder, const Document& doc,
    const std::vector<CategoryPath>& all_paths, std::size_t k);

// Asks the selector for up to three of the pre-candidates (order preserved,
// non-members discarded). On failure or an empty valid response, falls back
// to a deterministic greedy rule: walk the similarity-ordered pre-candidates,
// skipping paths that extend or shorten an already-chosen one, until three
// are chosen. Always returns at least one path.
CandidatePathSet select_candidates(const Document& doc,
                                   const std::vector<CategoryPath>& pre,
                                   PathSelector* selector);

// Runs precandidates + select_candidates for every document, with at most
// `max_concurrency` selector requests in flight; output is doc_id ascending.
std::vector<CandidatePathSet> assign_paths(const TextEncoder& encoder,
                                           const std::vector<Document>& corpus,
                                           const std::vector<CategoryPath>& all_paths,
                                           std::size_t k, PathSelector* selector,
                                           int max_concurrency = 4);

// The candidate path most similar to the query text; ties prefer fewer
// segments, then the lexicographically smaller linearization.
CategoryPath link_query_path(const TextEncoder& encoder, const std::string& query_text,
                             const CandidatePathSet& candidates);

struct TrainingSetOptions {
  int firstp_tokens = 64;
  int max_synthetic_queries = 5;
};

// Path-augmented training set: one retrieval example per query, one FirstP
// indexing example per document, one indexing example per synthetic query.
std::vector<PathAugmentedExample> build_training_set(
    const TextEncoder& encoder, const std::vector<Document>& corpus,
    const std::vector<Query>& queries,
    const std::map<std::string, CandidatePathSet>& assignments, const DocidTable& docids,
    const TrainingSetOptions& options = {});

void save_assignments(const std::vector<CandidatePathSet>& assignments,
                      const std::string& file_path);
std::vector<CandidatePathSet> load_assignments(const std::string& file_path);

std::map<std::string, CandidatePathSet> assignments_by_doc(
    const std::vector<CandidatePathSet>& assignments);

// All distinct paths that appear in at least one candidate set, ordered by
// depth then lexicographically (the stage-1 decoding space).
std::vector<CategoryPath> assigned_paths(const std::vector<CandidatePathSet>& assignments);

// linearized path -> doc_ids whose candidate set contains it
std::map<std::string, std::vector<std::string>> paths_to_documents(
    const std::vector<CandidatePathSet>& assignments);

}  // namespace hype
