#include "hype/ranking.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hype {

using nlohmann::json;

std::vector<ScoredDocid> aggregate(
    const std::vector<std::pair<CategoryPath, DecodeResult>>& result_sets) {
  struct Best {
    double score;
    std::size_t path_index;
    const CategoryPath* path;
  };
  std::map<std::string, Best> best;
  for (std::size_t j = 0; j < result_sets.size(); ++j) {
    const auto& [path, result] = result_sets[j];
    for (const auto& seq : result.sequences) {
      auto it = best.find(seq.payload);
      if (it == best.end() || seq.logprob > it->second.score) {
        best[seq.payload] = {seq.logprob, j, &path};
      }
      // equal scores keep the earlier path: nothing to do, j only grows
    }
  }

  std::vector<ScoredDocid> out;
  out.reserve(best.size());
  for (const auto& [doc_id, entry] : best) {
    out.push_back({doc_id, entry.score, *entry.path});
  }
  return out;
}

std::vector<ScoredDocid> final_ranking(std::vector<ScoredDocid> pooled, std::size_t k) {
  if (k < 1) throw std::runtime_error("final_ranking: k must be >= 1");
  std::sort(pooled.begin(), pooled.end(), [](const ScoredDocid& a, const ScoredDocid& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  if (pooled.size() > k) pooled.resize(k);
  return pooled;
}

Retriever::Retriever(const ScorerModel& model, TokenTrie path_trie, TokenTrie docid_trie,
                     RetrieverOptions opts)
    : model_(model),
      path_trie_(std::move(path_trie)),
      docid_trie_(std::move(docid_trie)),
      opts_(opts) {}

void Retriever::set_path_assignments(
    const std::map<std::string, std::vector<std::string>>& path_to_doc_ids,
    const DocidTable& table) {
  filtered_tries_.clear();
  for (const auto& [path, doc_ids] : path_to_doc_ids) {
    TokenTrie trie;
    for (const auto& doc_id : doc_ids) {
      auto it = table.entries.find(doc_id);
      if (it == table.entries.end()) {
        throw std::runtime_error("path assignment references unknown doc_id: " + doc_id);
      }
      trie.insert(it->second, doc_id);
    }
    if (!trie.empty()) filtered_tries_.emplace(path, std::move(trie));
  }
}

Retriever::Stages Retriever::decode_stages(const std::string& query_text, int k_paths) const {
  const std::vector<std::string> query = tokenize(query_text);

  Stages stages;
  stages.paths = generate_paths(model_, query, path_trie_, k_paths, opts_.constrain_paths,
                                opts_.max_len);
  stages.per_path.reserve(stages.paths.size());
  for (const auto& [path, lp] : stages.paths) {
    const TokenTrie* trie = &docid_trie_;
    if (opts_.path_filtered_trie) {
      auto it = filtered_tries_.find(linearize(path));
      if (it != filtered_tries_.end()) trie = &it->second;
    }
    stages.per_path.push_back(
        decode_docids(model_, query, path, *trie, opts_.beam, opts_.max_len));
  }
  return stages;
}

RetrievalAnswer Retriever::answer_from_stages(const std::string& query_id,
                                              const Stages& stages,
                                              std::size_t k_paths_prefix) const {
  const std::size_t n = std::min(k_paths_prefix, stages.paths.size());

  std::vector<std::pair<CategoryPath, DecodeResult>> sets;
  sets.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    DecodeResult result = stages.per_path[j];
    if (opts_.include_path_score) {
      for (auto& seq : result.sequences) seq.logprob += stages.paths[j].second;
    }
    sets.emplace_back(stages.paths[j].first, std::move(result));
  }

  RetrievalAnswer answer;
  answer.query_id = query_id;
  answer.paths.assign(stages.paths.begin(), stages.paths.begin() + static_cast<long>(n));
  answer.ranking = final_ranking(aggregate(sets), opts_.top_k);
  return answer;
}

RetrievalAnswer Retriever::retrieve(const Query& query) const {
  Stages stages = decode_stages(query.text, opts_.k_paths);
  return answer_from_stages(query.query_id, stages, stages.paths.size());
}

void save_answers(const std::vector<RetrievalAnswer>& answers, const std::string& file_path) {
  std::ofstream out(file_path);
  if (!out) throw std::runtime_error("cannot write results: " + file_path);
  for (const auto& a : answers) {
    json rec;
    rec["query_id"] = a.query_id;
    rec["paths"] = json::array();
    for (const auto& [path, lp] : a.paths) {
      rec["paths"].push_back({{"path", linearize(path)}, {"logprob", lp}});
    }
    rec["ranking"] = json::array();
    for (const auto& sd : a.ranking) {
      rec["ranking"].push_back({{"doc_id", sd.doc_id},
                                {"score", sd.score},
                                {"source_path", linearize(sd.source_path)}});
    }
    out << rec.dump() << "\n";
  }
}

std::vector<RetrievalAnswer> load_answers(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open results: " + file_path);

  std::vector<RetrievalAnswer> answers;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = json::parse(line);
    RetrievalAnswer a;
    a.query_id = rec.at("query_id").get<std::string>();
    for (const auto& p : rec.at("paths")) {
      a.paths.emplace_back(parse_path(p.at("path").get<std::string>()),
                           p.at("logprob").get<double>());
    }
    for (const auto& r : rec.at("ranking")) {
      a.ranking.push_back({r.at("doc_id").get<std::string>(), r.at("score").get<double>(),
                           parse_path(r.at("source_path").get<std::string>())});
    }
    answers.push_back(std::move(a));
  }
  return answers;
}

}  // namespace hype
