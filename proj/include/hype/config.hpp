#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

namespace hype {

// Default instruction template carried in the config for selector services
// that proxy an LLM; the wire contract itself only ships title/contents/
// candidates.
extern const char* kDefaultSelectorPrompt;

// All pipeline knobs, loadable from a JSON file (HYPE_CONFIG or --config)
// and overridable by CLI flags.
struct Config {
  int seed = 0;

  int embedder_dim = 1024;

  int taxonomy_max_depth = 4;
  std::string taxonomy_root = "Main topic classifications";

  int assign_k = 30;

  std::string selector_url;
  double selector_timeout_s = 30.0;
  int selector_max_concurrency = 4;
  std::string selector_cache_dir;
  std::string selector_prompt = kDefaultSelectorPrompt;

  std::string scheme = "title";
  int keywords_per_doc = 3;
  int firstp_tokens = 64;
  int max_synthetic_queries = 5;
  int summary_max_tokens = 24;

  std::string train_kind = "mixture";
  std::array<double, 3> lambda{0.4, 0.5, 0.1};
  double alpha = 0.1;

  int k_paths = 3;
  int beam = 100;
  int max_len = 64;
  bool constrain_paths = true;
  bool full_path_space = false;
  bool path_filtered_trie = false;

  bool include_path_score = false;
  int top_k = 100;

  std::vector<std::string> metrics = {"r1", "r10", "r100", "mrr100"};

  void apply(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  static Config load(const std::string& file_path);
  // Reads HYPE_CONFIG when set, otherwise returns defaults.
  static Config from_env();
};

}  // namespace hype
