#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hype {

struct Document {
  std::string doc_id;
  std::optional<std::string> title;
  std::string text;
  std::vector<std::string> synthetic_queries;
};

struct Query {
  std::string query_id;
  std::string text;
  std::string gold_docid;
  std::string split;  // optional "seen"/"unseen" tag, empty when absent
};

// Loads corpus.jsonl / queries.jsonl. Throws on malformed lines (with line
// number), duplicate doc_id, and queries whose gold_docid is missing.
std::pair<std::vector<Document>, std::vector<Query>> ingest_corpus(
    const std::string& corpus_file, const std::string& queries_file);

std::vector<Document> load_documents(const std::string& corpus_file);
std::vector<Query> load_queries(const std::string& queries_file);

enum class DocidScheme { title, keyword, summary, atomic };

DocidScheme docid_scheme_from_string(const std::string& name);
std::string to_string(DocidScheme scheme);

struct DocidParams {
  int keywords_per_doc = 3;       // 5 for MARCO-style configs
  int title_fallback_tokens = 16; // first-k text tokens when title is absent
  int summary_max_tokens = 24;
  std::vector<std::string> stopwords;  // off by default
};

struct DocidTable {
  DocidScheme scheme = DocidScheme::title;
  std::map<std::string, std::vector<std::string>> entries;  // doc_id -> tokens

  std::vector<std::string> all_tokens() const;
  void save(const std::string& file_path) const;
  static DocidTable load(const std::string& file_path);
};

// Deterministic, injective docid assignment. Collisions get "#2", "#3", ...
// disambiguator tokens in doc_id order.
DocidTable assign_docids(const std::vector<Document>& corpus, DocidScheme scheme,
                         const DocidParams& params = {});

}  // namespace hype
