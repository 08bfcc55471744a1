#include "hype/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "hype/scorer.hpp"

namespace hype {

using nlohmann::json;

namespace {

json parse_line(const std::string& file, const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const std::exception& e) {
    throw std::runtime_error(file + " line " + std::to_string(line_no) + ": " + e.what());
  }
}

}  // namespace

std::vector<Document> load_documents(const std::string& corpus_file) {
  std::ifstream in(corpus_file);
  if (!in) throw std::runtime_error("cannot open corpus file: " + corpus_file);

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = parse_line(corpus_file, line, line_no);

    Document doc;
    try {
      doc.doc_id = rec.at("doc_id").get<std::string>();
      if (rec.contains("title") && !rec["title"].is_null()) {
        doc.title = rec["title"].get<std::string>();
      }
      doc.text = rec.at("text").get<std::string>();
      if (rec.contains("synthetic_queries")) {
        doc.synthetic_queries = rec["synthetic_queries"].get<std::vector<std::string>>();
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(corpus_file + " line " + std::to_string(line_no) + ": " +
                               e.what());
    }
    if (doc.text.empty()) {
      throw std::runtime_error(corpus_file + " line " + std::to_string(line_no) +
                               ": document text is empty");
    }
    if (!seen.insert(doc.doc_id).second) {
      throw std::runtime_error("duplicate doc_id: " + doc.doc_id);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Query> load_queries(const std::string& queries_file) {
  std::ifstream in(queries_file);
  if (!in) throw std::runtime_error("cannot open queries file: " + queries_file);

  std::vector<Query> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = parse_line(queries_file, line, line_no);

    Query q;
    try {
      q.query_id = rec.at("query_id").get<std::string>();
      q.text = rec.at("text").get<std::string>();
      q.gold_docid = rec.at("gold_docid").get<std::string>();
      if (rec.contains("split") && !rec["split"].is_null()) {
        q.split = rec["split"].get<std::string>();
      }
    } catch (const std::exception& e) {
      throw std::runtime_error(queries_file + " line " + std::to_string(line_no) + ": " +
                               e.what());
    }
    if (q.text.empty()) {
      throw std::runtime_error(queries_file + " line " + std::to_string(line_no) +
                               ": query text is empty");
    }
    queries.push_back(std::move(q));
  }
  return queries;
}

std::pair<std::vector<Document>, std::vector<Query>> ingest_corpus(
    const std::string& corpus_file, const std::string& queries_file) {
  auto docs = load_documents(corpus_file);
  auto queries = load_queries(queries_file);

  std::unordered_set<std::string> ids;
  for (const auto& d : docs) ids.insert(d.doc_id);
  for (const auto& q : queries) {
    if (!ids.count(q.gold_docid)) {
      throw std::runtime_error("query " + q.query_id + ": gold_docid \"" + q.gold_docid +
                               "\" not in corpus");
    }
  }
  return {std::move(docs), std::move(queries)};
}

DocidScheme docid_scheme_from_string(const std::string& name) {
  if (name == "title") return DocidScheme::title;
  if (name == "keyword") return DocidScheme::keyword;
  if (name == "summary") return DocidScheme::summary;
  if (name == "atomic") return DocidScheme::atomic;
  throw std::runtime_error("unknown docid scheme: " + name);
}

std::string to_string(DocidScheme scheme) {
  switch (scheme) {
    case DocidScheme::title: return "title";
    case DocidScheme::keyword: return "keyword";
    case DocidScheme::summary: return "summary";
    case DocidScheme::atomic: return "atomic";
  }
  return "title";
}

namespace {

std::vector<std::string> first_n(std::vector<std::string> tokens, int n) {
  if (n >= 0 && tokens.size() > static_cast<std::size_t>(n)) {
    tokens.resize(static_cast<std::size_t>(n));
  }
  return tokens;
}

std::string first_sentence(const std::string& text) {
  auto cut = text.find_first_of(".!?");
  return cut == std::string::npos ? text : text.substr(0, cut);
}

std::vector<std::string> keyword_tokens(const Document& doc,
                                        const std::unordered_map<std::string, int>& df,
                                        std::size_t corpus_size, const DocidParams& params) {
  std::unordered_map<std::string, int> tf;
  for (const auto& tok : tokenize(doc.text)) ++tf[tok];
  for (const auto& stop : params.stopwords) tf.erase(stop);

  // tf * ln(N/df); ties by term ascending
  std::vector<std::pair<double, std::string>> scored;
  scored.reserve(tf.size());
  for (const auto& [term, count] : tf) {
    double idf = std::log(static_cast<double>(corpus_size) / df.at(term));
    scored.emplace_back(count * idf, term);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(params.keywords_per_doc);
       ++i) {
    out.push_back(scored[i].second);
  }
  return out;
}

}  // namespace

DocidTable assign_docids(const std::vector<Document>& corpus, DocidScheme scheme,
                         const DocidParams& params) {
  if (corpus.empty()) throw std::runtime_error("assign_docids: empty corpus");

  std::vector<const Document*> ordered;
  ordered.reserve(corpus.size());
  for (const auto& d : corpus) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(),
            [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });

  std::unordered_map<std::string, int> df;
  if (scheme == DocidScheme::keyword) {
    for (const auto& d : corpus) {
      std::set<std::string> seen;
      for (const auto& tok : tokenize(d.text)) seen.insert(tok);
      for (const auto& tok : seen) ++df[tok];
    }
  }

  DocidTable table;
  table.scheme = scheme;
  std::set<std::vector<std::string>> used;
  for (const Document* doc : ordered) {
    std::vector<std::string> base;
    switch (scheme) {
      case DocidScheme::title:
        if (doc->title && !doc->title->empty()) {
          base = tokenize(*doc->title);
        } else {
          base = first_n(tokenize(doc->text), params.title_fallback_tokens);
        }
        break;
      case DocidScheme::keyword:
        base = keyword_tokens(*doc, df, corpus.size(), params);
        break;
      case DocidScheme::summary:
        base = first_n(tokenize(first_sentence(doc->text)), params.summary_max_tokens);
        break;
      case DocidScheme::atomic:
        base = {"doc_" + doc->doc_id};
        break;
    }
    if (base.empty()) {
      throw std::runtime_error("cannot derive a docid for document " + doc->doc_id);
    }

    std::vector<std::string> candidate = base;
    for (int suffix = 2; used.count(candidate); ++suffix) {
      candidate = base;
      candidate.push_back("#" + std::to_string(suffix));
    }
    used.insert(candidate);
    table.entries[doc->doc_id] = std::move(candidate);
  }
  return table;
}

std::vector<std::string> DocidTable::all_tokens() const {
  std::set<std::string> tokens;
  for (const auto& [_, toks] : entries) {
    tokens.insert(toks.begin(), toks.end());
  }
  return {tokens.begin(), tokens.end()};
}

void DocidTable::save(const std::string& file_path) const {
  json doc;
  doc["scheme"] = to_string(scheme);
  doc["entries"] = json::object();
  for (const auto& [id, toks] : entries) doc["entries"][id] = toks;

  std::ofstream out(file_path);
  if (!out) throw std::runtime_error("cannot write docid table: " + file_path);
  out << doc.dump(2) << "\n";
}

DocidTable DocidTable::load(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open docid table: " + file_path);
  json doc = json::parse(in);

  DocidTable table;
  table.scheme = docid_scheme_from_string(doc.at("scheme").get<std::string>());
  for (const auto& [id, toks] : doc.at("entries").items()) {
    table.entries[id] = toks.get<std::vector<std::string>>();
  }
  return table;
}

}  // namespace hype
