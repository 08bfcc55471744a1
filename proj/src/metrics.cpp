#include "hype/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hype/assignment.hpp"

namespace hype {

using nlohmann::json;

std::optional<std::size_t> gold_rank(const RetrievalAnswer& answer, const Query& query) {
  for (std::size_t i = 0; i < answer.ranking.size(); ++i) {
    if (answer.ranking[i].doc_id == query.gold_docid) return i + 1;
  }
  return std::nullopt;
}

namespace {

const RetrievalAnswer& answer_for(const std::map<std::string, RetrievalAnswer>& answers,
                                  const Query& q) {
  auto it = answers.find(q.query_id);
  if (it == answers.end()) {
    throw std::runtime_error("no answer record for query " + q.query_id);
  }
  return it->second;
}

}  // namespace

double recall_at_k(const std::map<std::string, RetrievalAnswer>& answers,
                   const std::vector<Query>& queries, std::size_t k) {
  if (k < 1) throw std::runtime_error("recall_at_k: k must be >= 1");
  if (queries.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& q : queries) {
    auto rank = gold_rank(answer_for(answers, q), q);
    if (rank && *rank <= k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(queries.size());
}

double mrr_at_k(const std::map<std::string, RetrievalAnswer>& answers,
                const std::vector<Query>& queries, std::size_t k) {
  if (k < 1) throw std::runtime_error("mrr_at_k: k must be >= 1");
  if (queries.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& q : queries) {
    auto rank = gold_rank(answer_for(answers, q), q);
    if (rank && *rank <= k) sum += 1.0 / static_cast<double>(*rank);
  }
  return sum / static_cast<double>(queries.size());
}

double explanation_relevance(const TextEncoder& encoder, const Query& query,
                             const Document& doc, const CategoryPath& path) {
  EmbeddingVector p = encoder.embed(linearize(path));
  double a = cosine(encoder.embed(query.text), p);
  double b = cosine(encoder.embed(document_repr(doc)), p);
  return std::sqrt(std::max(0.0, a) * std::max(0.0, b));
}

MetricSpec parse_metric(const std::string& name) {
  MetricSpec spec;
  spec.name = name;
  std::string digits;
  if (name.rfind("mrr", 0) == 0) {
    spec.is_mrr = true;
    digits = name.substr(3);
  } else if (name.rfind("r", 0) == 0) {
    spec.is_mrr = false;
    digits = name.substr(1);
  } else {
    throw std::runtime_error("unknown metric: " + name);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::runtime_error("unknown metric: " + name);
  }
  spec.k = static_cast<std::size_t>(std::stoul(digits));
  if (spec.k < 1) throw std::runtime_error("metric cutoff must be >= 1: " + name);
  return spec;
}

namespace {

std::string metric_label(const MetricSpec& spec) {
  return (spec.is_mrr ? "mrr@" : "recall@") + std::to_string(spec.k);
}

std::map<std::string, double> compute_metrics(
    const std::map<std::string, RetrievalAnswer>& answers,
    const std::vector<Query>& queries, const std::vector<MetricSpec>& specs) {
  std::map<std::string, double> out;
  for (const auto& spec : specs) {
    double value = spec.is_mrr ? mrr_at_k(answers, queries, spec.k)
                               : recall_at_k(answers, queries, spec.k);
    out[metric_label(spec)] = value;
  }
  return out;
}

}  // namespace

EvalReport evaluate_answers(const std::map<std::string, RetrievalAnswer>& answers,
                            const std::vector<Query>& queries,
                            const std::vector<std::string>& metric_names,
                            json config_snapshot) {
  std::vector<MetricSpec> specs;
  specs.reserve(metric_names.size());
  for (const auto& name : metric_names) specs.push_back(parse_metric(name));

  EvalReport report;
  report.config_snapshot = std::move(config_snapshot);
  report.metrics = compute_metrics(answers, queries, specs);
  for (const auto& q : queries) {
    report.ranks[q.query_id] = gold_rank(answer_for(answers, q), q);
  }

  std::set<std::string> splits;
  for (const auto& q : queries) {
    if (!q.split.empty()) splits.insert(q.split);
  }
  for (const auto& split : splits) {
    std::vector<Query> subset;
    for (const auto& q : queries) {
      if (q.split == split) subset.push_back(q);
    }
    report.split_metrics[split] = compute_metrics(answers, subset, specs);
  }
  return report;
}

json EvalReport::to_json() const {
  json doc;
  doc["metrics"] = metrics;
  if (!split_metrics.empty()) doc["splits"] = split_metrics;
  doc["per_query_ranks"] = json::object();
  for (const auto& [qid, rank] : ranks) {
    if (rank) {
      doc["per_query_ranks"][qid] = *rank;
    } else {
      doc["per_query_ranks"][qid] = nullptr;
    }
  }
  if (!config_snapshot.is_null()) doc["config"] = config_snapshot;
  return doc;
}

std::vector<std::pair<int, EvalReport>> sweep_paths(
    const Retriever& retriever, const std::vector<Query>& queries,
    const std::vector<int>& k_list, const std::vector<std::string>& metric_names) {
  if (k_list.empty()) throw std::runtime_error("sweep_paths: empty K list");
  const int k_max = *std::max_element(k_list.begin(), k_list.end());

  std::vector<Retriever::Stages> stages;
  stages.reserve(queries.size());
  for (const auto& q : queries) {
    stages.push_back(retriever.decode_stages(q.text, k_max));
  }

  std::vector<std::pair<int, EvalReport>> out;
  for (int k : k_list) {
    std::map<std::string, RetrievalAnswer> answers;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      answers[queries[i].query_id] = retriever.answer_from_stages(
          queries[i].query_id, stages[i], static_cast<std::size_t>(k));
    }
    out.emplace_back(k, evaluate_answers(answers, queries, metric_names,
                                         json{{"k_paths", k}}));
  }
  return out;
}

std::string sweep_tsv(const std::vector<std::pair<int, EvalReport>>& sweep,
                      const std::vector<std::string>& metric_names) {
  std::vector<MetricSpec> specs;
  for (const auto& name : metric_names) specs.push_back(parse_metric(name));

  std::ostringstream out;
  out << "k_paths";
  for (const auto& spec : specs) out << '\t' << metric_label(spec);
  out << '\n';
  for (const auto& [k, report] : sweep) {
    out << k;
    for (const auto& spec : specs) out << '\t' << report.metrics.at(metric_label(spec));
    out << '\n';
  }
  return out.str();
}

}  // namespace hype
