#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hype/corpus.hpp"
#include "hype/decoder.hpp"
#include "hype/scorer.hpp"
#include "hype/taxonomy.hpp"
#include "hype/trie.hpp"

namespace hype {

struct ScoredDocid {
  std::string doc_id;
  double score = 0.0;  // log-likelihood
  CategoryPath source_path;
};

struct RetrievalAnswer {
  std::string query_id;
  std::vector<std::pair<CategoryPath, double>> paths;  // the explanation
  std::vector<ScoredDocid> ranking;                    // scores non-increasing
};

// Max-score dedup across per-path result sets: each docid keeps its highest
// score; equal maxima keep the earlier path (lower path index). Output is
// doc_id ascending.
std::vector<ScoredDocid> aggregate(
    const std::vector<std::pair<CategoryPath, DecodeResult>>& result_sets);

// Top-min(k, n) by score descending, ties by doc_id ascending.
std::vector<ScoredDocid> final_ranking(std::vector<ScoredDocid> pooled, std::size_t k);

struct RetrieverOptions {
  int k_paths = 3;
  int beam = 100;
  int max_len = 64;
  bool constrain_paths = true;
  bool path_filtered_trie = false;
  bool include_path_score = false;
  std::size_t top_k = 100;
};

// Two-stage inference: generate paths, decode docids per path, aggregate and
// rank. Immutable after construction; retrieval is pure, so queries can be
// processed in parallel.
class Retriever {
 public:
  Retriever(const ScorerModel& model, TokenTrie path_trie, TokenTrie docid_trie,
            RetrieverOptions opts);

  // Required for path_filtered_trie mode: restricts the docid trie of each
  // generated path to documents whose candidate set contains it.
  void set_path_assignments(
      const std::map<std::string, std::vector<std::string>>& path_to_doc_ids,
      const DocidTable& table);

  struct Stages {
    std::vector<std::pair<CategoryPath, double>> paths;
    std::vector<DecodeResult> per_path;
  };

  // Runs both stages with k_paths paths (beam = k_paths in stage 1).
  Stages decode_stages(const std::string& query_text, int k_paths) const;

  // Assembles an answer from the first `k_paths_prefix` paths of `stages`.
  RetrievalAnswer answer_from_stages(const std::string& query_id, const Stages& stages,
                                     std::size_t k_paths_prefix) const;

  RetrievalAnswer retrieve(const Query& query) const;

  const RetrieverOptions& options() const { return opts_; }

 private:
  const ScorerModel& model_;
  TokenTrie path_trie_;
  TokenTrie docid_trie_;
  std::map<std::string, TokenTrie> filtered_tries_;  // linearized path -> trie
  RetrieverOptions opts_;
};

void save_answers(const std::vector<RetrievalAnswer>& answers, const std::string& file_path);
std::vector<RetrievalAnswer> load_answers(const std::string& file_path);

}  // namespace hype
