#include "hype/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace hype {

using nlohmann::json;

const char* kDefaultSelectorPrompt =
    "You're a taxonomy expert. You will receive a document along with a set of "
    "candidate taxonomy hierarchy paths for the document. Your task is to select "
    "the path that can represent the document. Exclude paths that are too broad "
    "or less relevant or contain too specific information such as year.\n"
    "You may list up to 3 paths, using only the paths in the candidate set. Do "
    "not include any explanation.\n\n"
    "<Document title>:\n{title}\n\n"
    "<Document contents>:\n{contents}\n\n"
    "<Candidate hierarchy paths>:\n{candidates}\n\n"
    "<Selected hierarchy paths>:\n";

namespace {

template <typename T>
void read(const json& doc, const char* key, T& value) {
  if (doc.contains(key) && !doc[key].is_null()) {
    value = doc[key].get<T>();
  }
}

}  // namespace

void Config::apply(const json& doc) {
  read(doc, "seed", seed);

  if (doc.contains("embedder")) {
    read(doc["embedder"], "dim", embedder_dim);
  }
  if (doc.contains("taxonomy")) {
    read(doc["taxonomy"], "max_depth", taxonomy_max_depth);
    read(doc["taxonomy"], "root", taxonomy_root);
  }
  if (doc.contains("assign")) {
    read(doc["assign"], "k", assign_k);
  }
  if (doc.contains("selector")) {
    const json& s = doc["selector"];
    read(s, "url", selector_url);
    read(s, "timeout_s", selector_timeout_s);
    read(s, "max_concurrency", selector_max_concurrency);
    read(s, "cache_dir", selector_cache_dir);
    read(s, "prompt_template", selector_prompt);
  }
  if (doc.contains("dataset")) {
    const json& d = doc["dataset"];
    read(d, "scheme", scheme);
    read(d, "keywords_per_doc", keywords_per_doc);
    read(d, "firstp_tokens", firstp_tokens);
    read(d, "max_synthetic_queries", max_synthetic_queries);
    read(d, "summary_max_tokens", summary_max_tokens);
  }
  if (doc.contains("train")) {
    const json& t = doc["train"];
    read(t, "kind", train_kind);
    read(t, "lambda", lambda);
    read(t, "alpha", alpha);
  }
  if (doc.contains("decode")) {
    const json& d = doc["decode"];
    read(d, "k_paths", k_paths);
    read(d, "beam", beam);
    read(d, "max_len", max_len);
    read(d, "constrain_paths", constrain_paths);
    read(d, "full_path_space", full_path_space);
    read(d, "path_filtered_trie", path_filtered_trie);
  }
  if (doc.contains("rank")) {
    read(doc["rank"], "include_path_score", include_path_score);
    read(doc["rank"], "top_k", top_k);
  }
  if (doc.contains("eval")) {
    read(doc["eval"], "metrics", metrics);
  }
}

json Config::to_json() const {
  return json{
      {"seed", seed},
      {"embedder", {{"dim", embedder_dim}}},
      {"taxonomy", {{"max_depth", taxonomy_max_depth}, {"root", taxonomy_root}}},
      {"assign", {{"k", assign_k}}},
      {"selector",
       {{"url", selector_url},
        {"timeout_s", selector_timeout_s},
        {"max_concurrency", selector_max_concurrency},
        {"cache_dir", selector_cache_dir},
        {"prompt_template", selector_prompt}}},
      {"dataset",
       {{"scheme", scheme},
        {"keywords_per_doc", keywords_per_doc},
        {"firstp_tokens", firstp_tokens},
        {"max_synthetic_queries", max_synthetic_queries},
        {"summary_max_tokens", summary_max_tokens}}},
      {"train", {{"kind", train_kind}, {"lambda", lambda}, {"alpha", alpha}}},
      {"decode",
       {{"k_paths", k_paths},
        {"beam", beam},
        {"max_len", max_len},
        {"constrain_paths", constrain_paths},
        {"full_path_space", full_path_space},
        {"path_filtered_trie", path_filtered_trie}}},
      {"rank", {{"include_path_score", include_path_score}, {"top_k", top_k}}},
      {"eval", {{"metrics", metrics}}}};
}

Config Config::load(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open config: " + file_path);
  Config config;
  config.apply(json::parse(in));
  return config;
}

Config Config::from_env() {
  Config config;
  const char* path = std::getenv("HYPE_CONFIG");
  if (path && *path) {
    config = load(path);
  }
  return config;
}

}  // namespace hype
