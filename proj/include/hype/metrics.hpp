#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hype/embedding.hpp"
#include "hype/ranking.hpp"

namespace hype {

// 1-based rank of the gold docid in the answer, nullopt when absent.
std::optional<std::size_t> gold_rank(const RetrievalAnswer& answer, const Query& query);

// Fraction of queries whose gold docid is within the top k.
double recall_at_k(const std::map<std::string, RetrievalAnswer>& answers,
                   const std::vector<Query>& queries, std::size_t k);

// Mean over queries of 1/rank when rank <= k, else 0.
double mrr_at_k(const std::map<std::string, RetrievalAnswer>& answers,
                const std::vector<Query>& queries, std::size_t k);

// Geometric mean of the clamped query-path and document-path similarities.
double explanation_relevance(const TextEncoder& encoder, const Query& query,
                             const Document& doc, const CategoryPath& path);

struct MetricSpec {
  std::string name;  // "r10", "mrr100", ...
  bool is_mrr = false;
  std::size_t k = 10;
};

MetricSpec parse_metric(const std::string& name);

struct EvalReport {
  std::map<std::string, double> metrics;  // metric name -> value, overall
  std::map<std::string, std::map<std::string, double>> split_metrics;
  std::map<std::string, std::optional<std::size_t>> ranks;  // query_id -> gold rank
  nlohmann::json config_snapshot;

  // Wall clock, reported by `bench` / timing sidecars; deliberately excluded
  // from to_json() so reports stay byte-identical across reruns.
  double seconds_path_stage = 0.0;
  double seconds_docid_stage = 0.0;

  nlohmann::json to_json() const;
};

EvalReport evaluate_answers(const std::map<std::string, RetrievalAnswer>& answers,
                            const std::vector<Query>& queries,
                            const std::vector<std::string>& metric_names,
                            nlohmann::json config_snapshot = {});

// Figure-style sweep over the number of decoded paths. Stage-1 beams are run
// once at max(K_list) per query and reused: the K-path ranking aggregates the
// first K paths of that single decode.
std::vector<std::pair<int, EvalReport>> sweep_paths(
    const Retriever& retriever, const std::vector<Query>& queries,
    const std::vector<int>& k_list, const std::vector<std::string>& metric_names);

std::string sweep_tsv(const std::vector<std::pair<int, EvalReport>>& sweep,
                      const std::vector<std::string>& metric_names);

}  // namespace hype
