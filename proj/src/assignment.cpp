#include "hype/assignment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace hype {

using nlohmann::json;

std::string document_repr(const Document& doc) {
  std::string repr;
  if (doc.title && !doc.title->empty()) {
    repr = *doc.title + " ";
  }
  repr += doc.text.substr(0, 256);
  return repr;
}

namespace {

std::vector<std::pair<CategoryPath, double>> rank_paths(
    const EmbeddingVector& doc_vec, const std::vector<CategoryPath>& all_paths,
    const std::vector<EmbeddingVector>& path_vecs, std::size_t k) {
  std::vector<std::pair<CategoryPath, double>> scored;
  scored.reserve(all_paths.size());
  for (std::size_t i = 0; i < all_paths.size(); ++i) {
    scored.emplace_back(all_paths[i], cosine(doc_vec, path_vecs[i]));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return linearize(a.first) < linearize(b.first);
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

bool segment_prefix(const CategoryPath& a, const CategoryPath& b) {
  if (a.depth() > b.depth()) return false;
  return std::equal(a.segments.begin(), a.segments.end(), b.segments.begin());
}

}  // namespace

std::vector<std::pair<CategoryPath, double>> precandidates(
    const TextEncoder& encoder, const Document& doc,
    const std::vector<CategoryPath>& all_paths, std::size_t k) {
  if (k < 3) throw std::runtime_error("precandidates: k must be >= 3");
  if (all_paths.empty()) throw std::runtime_error("precandidates: no taxonomy paths");

  std::vector<EmbeddingVector> path_vecs;
  path_vecs.reserve(all_paths.size());
  for (const auto& p : all_paths) path_vecs.push_back(encoder.embed(linearize(p)));
  return rank_paths(encoder.embed(document_repr(doc)), all_paths, path_vecs, k);
}

CandidatePathSet select_candidates(const Document& doc,
                                   const std::vector<CategoryPath>& pre,
                                   PathSelector* selector) {
  if (pre.empty()) throw std::runtime_error("select_candidates: empty pre-candidate set");

  if (selector) {
    std::vector<std::string> candidates;
    candidates.reserve(pre.size());
    for (const auto& p : pre) candidates.push_back(linearize(p));

    auto response = selector->select(doc.title.value_or(""), doc.text, candidates);
    if (response) {
      std::set<std::string> members(candidates.begin(), candidates.end());
      std::vector<CategoryPath> valid;
      std::set<std::string> taken;
      for (const auto& s : *response) {
        if (!members.count(s) || taken.count(s)) continue;
        valid.push_back(parse_path(s));
        taken.insert(s);
        if (valid.size() == 3) break;
      }
      if (!valid.empty()) {
        return {doc.doc_id, std::move(valid), "external-selector"};
      }
    }
  }

  // deterministic fallback: greedy by similarity order, skipping paths that
  // extend or shorten an already-chosen path
  std::vector<CategoryPath> chosen;
  for (const auto& p : pre) {
    bool related = std::any_of(chosen.begin(), chosen.end(), [&](const CategoryPath& c) {
      return segment_prefix(c, p) || segment_prefix(p, c);
    });
    if (related) continue;
    chosen.push_back(p);
    if (chosen.size() == 3) break;
  }
  if (chosen.empty()) chosen.push_back(pre.front());
  return {doc.doc_id, std::move(chosen), "fallback"};
}

std::vector<CandidatePathSet> assign_paths(const TextEncoder& encoder,
                                           const std::vector<Document>& corpus,
                                           const std::vector<CategoryPath>& all_paths,
                                           std::size_t k, PathSelector* selector,
                                           int max_concurrency) {
  if (all_paths.empty()) throw std::runtime_error("assign_paths: no taxonomy paths");
  if (max_concurrency < 1) max_concurrency = 1;

  std::vector<EmbeddingVector> path_vecs;
  path_vecs.reserve(all_paths.size());
  for (const auto& p : all_paths) path_vecs.push_back(encoder.embed(linearize(p)));

  std::vector<CandidatePathSet> out(corpus.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      try {
        auto pre_scored = rank_paths(encoder.embed(document_repr(corpus[i])), all_paths,
                                     path_vecs, std::max<std::size_t>(k, 3));
        std::vector<CategoryPath> pre;
        pre.reserve(pre_scored.size());
        for (auto& [p, s] : pre_scored) pre.push_back(std::move(p));
        out[i] = select_candidates(corpus[i], pre, selector);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(max_concurrency),
                                                std::max<std::size_t>(corpus.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  std::sort(out.begin(), out.end(), [](const CandidatePathSet& a, const CandidatePathSet& b) {
    return a.doc_id < b.doc_id;
  });
  return out;
}

CategoryPath link_query_path(const TextEncoder& encoder, const std::string& query_text,
                             const CandidatePathSet& candidates) {
  if (candidates.paths.empty()) {
    throw std::runtime_error("link_query_path: empty candidate set");
  }
  EmbeddingVector q = encoder.embed(query_text);

  const CategoryPath* best = nullptr;
  double best_score = 0.0;
  for (const auto& p : candidates.paths) {
    double score = cosine(q, encoder.embed(linearize(p)));
    if (!best || score > best_score) {
      best = &p;
      best_score = score;
      continue;
    }
    if (score == best_score) {
      if (p.depth() < best->depth() ||
          (p.depth() == best->depth() && linearize(p) < linearize(*best))) {
        best = &p;
      }
    }
  }
  return *best;
}

namespace {

std::string first_tokens(const std::string& text, int n) {
  std::istringstream in(text);
  std::string tok;
  std::string out;
  int count = 0;
  while (count < n && in >> tok) {
    if (count > 0) out += ' ';
    out += tok;
    ++count;
  }
  return out;
}

}  // namespace

std::vector<PathAugmentedExample> build_training_set(
    const TextEncoder& encoder, const std::vector<Document>& corpus,
    const std::vector<Query>& queries,
    const std::map<std::string, CandidatePathSet>& assignments, const DocidTable& docids,
    const TrainingSetOptions& options) {
  std::vector<PathAugmentedExample> examples;
  examples.reserve(queries.size() + corpus.size() * (1 + options.max_synthetic_queries));

  for (const auto& q : queries) {
    auto docid_it = docids.entries.find(q.gold_docid);
    auto cand_it = assignments.find(q.gold_docid);
    if (docid_it == docids.entries.end() || cand_it == assignments.end()) {
      throw std::runtime_error("query " + q.query_id + ": gold_docid \"" + q.gold_docid +
                               "\" has no docid or path assignment");
    }
    examples.push_back({q.text, link_query_path(encoder, q.text, cand_it->second),
                        docid_it->second, ExampleKind::retrieval});
  }

  for (const auto& doc : corpus) {
    auto docid_it = docids.entries.find(doc.doc_id);
    auto cand_it = assignments.find(doc.doc_id);
    if (docid_it == docids.entries.end() || cand_it == assignments.end()) {
      throw std::runtime_error("document " + doc.doc_id +
                               " has no docid or path assignment");
    }
    const auto& cand = cand_it->second;
    const auto& docid = docid_it->second;

    examples.push_back({first_tokens(doc.text, options.firstp_tokens),
                        link_query_path(encoder, document_repr(doc), cand), docid,
                        ExampleKind::indexing_firstp});

    int used = 0;
    for (const auto& sq : doc.synthetic_queries) {
      if (used == options.max_synthetic_queries) break;
      examples.push_back({sq, link_query_path(encoder, sq, cand), docid,
                          ExampleKind::indexing_synthetic});
      ++used;
    }
  }
  return examples;
}

void save_assignments(const std::vector<CandidatePathSet>& assignments,
                      const std::string& file_path) {
  std::ofstream out(file_path);
  if (!out) throw std::runtime_error("cannot write assignments: " + file_path);
  for (const auto& a : assignments) {
    json rec;
    rec["doc_id"] = a.doc_id;
    rec["paths"] = json::array();
    for (const auto& p : a.paths) rec["paths"].push_back(linearize(p));
    rec["provenance"] = a.provenance;
    out << rec.dump() << "\n";
  }
}

std::vector<CandidatePathSet> load_assignments(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open assignments: " + file_path);

  std::vector<CandidatePathSet> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = json::parse(line);
    CandidatePathSet a;
    a.doc_id = rec.at("doc_id").get<std::string>();
    for (const auto& p : rec.at("paths")) a.paths.push_back(parse_path(p.get<std::string>()));
    a.provenance = rec.at("provenance").get<std::string>();
    out.push_back(std::move(a));
  }
  return out;
}

std::map<std::string, CandidatePathSet> assignments_by_doc(
    const std::vector<CandidatePathSet>& assignments) {
  std::map<std::string, CandidatePathSet> out;
  for (const auto& a : assignments) out[a.doc_id] = a;
  return out;
}

std::vector<CategoryPath> assigned_paths(const std::vector<CandidatePathSet>& assignments) {
  std::set<CategoryPath> unique;
  for (const auto& a : assignments) unique.insert(a.paths.begin(), a.paths.end());

  std::vector<CategoryPath> out(unique.begin(), unique.end());
  std::sort(out.begin(), out.end(), [](const CategoryPath& a, const CategoryPath& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a.segments < b.segments;
  });
  return out;
}

std::map<std::string, std::vector<std::string>> paths_to_documents(
    const std::vector<CandidatePathSet>& assignments) {
  std::map<std::string, std::set<std::string>> collect;
  for (const auto& a : assignments) {
    for (const auto& p : a.paths) collect[linearize(p)].insert(a.doc_id);
  }
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [path, ids] : collect) out[path] = {ids.begin(), ids.end()};
  return out;
}

}  // namespace hype
