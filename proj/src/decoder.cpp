#include "hype/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hype {

namespace {

struct Candidate {
  std::vector<std::string> tokens;
  double logprob;
  const TokenTrie::Node* node;
};

bool better(double lp_a, const std::vector<std::string>& tok_a, double lp_b,
            const std::vector<std::string>& tok_b) {
  if (lp_a != lp_b) return lp_a > lp_b;
  return tok_a < tok_b;
}

void sort_sequences(std::vector<DecodedSequence>& seqs) {
  std::sort(seqs.begin(), seqs.end(), [](const DecodedSequence& a, const DecodedSequence& b) {
    return better(a.logprob, a.tokens, b.logprob, b.tokens);
  });
}

}  // namespace

DecodeResult constrained_beam_search(const ScorerModel& m,
                                     const std::vector<std::string>& input,
                                     const TokenTrie& trie, int beam, int max_len,
                                     const std::vector<std::string>& seed_prefix) {
  if (beam < 1) throw std::runtime_error("beam search: beam must be >= 1");
  if (trie.empty()) throw std::runtime_error("beam search: empty trie");

  const double floor = std::log(kProbFloor);
  std::vector<Candidate> live;
  live.push_back({{}, 0.0, trie.root()});
  std::vector<DecodedSequence> finished;

  for (int step = 0; step < max_len && !live.empty(); ++step) {
    std::vector<Candidate> expanded;
    for (const auto& hyp : live) {
      std::vector<std::string> context = seed_prefix;
      context.insert(context.end(), hyp.tokens.begin(), hyp.tokens.end());

      for (const auto& [tok, child] : hyp.node->children) {
        double p = m.token_prob(input, context, tok);
        double lp = hyp.logprob + std::max(std::log(p), floor);
        if (tok == kEndToken && child->terminal) {
          finished.push_back({hyp.tokens, lp, child->payload});
        } else {
          std::vector<std::string> tokens = hyp.tokens;
          tokens.push_back(tok);
          expanded.push_back({std::move(tokens), lp, child.get()});
        }
      }
    }
    std::sort(expanded.begin(), expanded.end(), [](const Candidate& a, const Candidate& b) {
      return better(a.logprob, a.tokens, b.logprob, b.tokens);
    });
    if (expanded.size() > static_cast<std::size_t>(beam)) {
      expanded.resize(static_cast<std::size_t>(beam));
    }
    live = std::move(expanded);
  }

  sort_sequences(finished);
  if (finished.size() > static_cast<std::size_t>(beam)) {
    finished.resize(static_cast<std::size_t>(beam));
  }
  return {std::move(finished)};
}

DecodeResult unconstrained_beam_search(const ScorerModel& m,
                                       const std::vector<std::string>& input, int beam,
                                       int max_len) {
  if (beam < 1) throw std::runtime_error("beam search: beam must be >= 1");

  const double floor = std::log(kProbFloor);
  const auto& vocab = m.vocab();

  struct FreeCandidate {
    std::vector<std::string> tokens;
    double logprob;
  };
  std::vector<FreeCandidate> live;
  live.push_back({{}, 0.0});
  std::vector<DecodedSequence> finished;

  for (int step = 0; step < max_len && !live.empty(); ++step) {
    std::vector<FreeCandidate> expanded;
    for (const auto& hyp : live) {
      std::vector<double> dist = m.next_token_dist(input, hyp.tokens);
      for (std::size_t i = 0; i < dist.size(); ++i) {
        const std::string& tok = vocab.tokens[i];
        double lp = hyp.logprob + std::max(std::log(dist[i]), floor);
        if (tok == kEndToken) {
          finished.push_back({hyp.tokens, lp, ""});
        } else {
          std::vector<std::string> tokens = hyp.tokens;
          tokens.push_back(tok);
          expanded.push_back({std::move(tokens), lp});
        }
      }
    }
    std::sort(expanded.begin(), expanded.end(),
              [](const FreeCandidate& a, const FreeCandidate& b) {
                return better(a.logprob, a.tokens, b.logprob, b.tokens);
              });
    if (expanded.size() > static_cast<std::size_t>(beam)) {
      expanded.resize(static_cast<std::size_t>(beam));
    }
    live = std::move(expanded);
  }

  sort_sequences(finished);
  if (finished.size() > static_cast<std::size_t>(beam)) {
    finished.resize(static_cast<std::size_t>(beam));
  }
  return {std::move(finished)};
}

namespace {

// Rebuilds a path from decoded tokens: words between ">" separators form
// segments. Returns an empty path when the token shape is not a path.
CategoryPath path_from_tokens(const std::vector<std::string>& tokens) {
  CategoryPath path;
  std::string segment;
  for (const auto& tok : tokens) {
    if (tok == kPathSepToken) {
      if (segment.empty()) return {};
      path.segments.push_back(segment);
      segment.clear();
    } else {
      if (!segment.empty()) segment += ' ';
      segment += tok;
    }
  }
  if (segment.empty()) return {};
  path.segments.push_back(segment);
  return path;
}

}  // namespace

std::vector<std::pair<CategoryPath, double>> generate_paths(
    const ScorerModel& m, const std::vector<std::string>& query,
    const TokenTrie& path_trie, int k_paths, bool constrain, int max_len) {
  if (k_paths < 1) throw std::runtime_error("generate_paths: k_paths must be >= 1");

  std::vector<std::pair<CategoryPath, double>> out;
  if (constrain) {
    DecodeResult res = constrained_beam_search(m, query, path_trie, k_paths, max_len);
    for (const auto& seq : res.sequences) {
      out.emplace_back(parse_path(seq.payload), seq.logprob);
    }
    return out;
  }

  DecodeResult res = unconstrained_beam_search(m, query, k_paths, max_len);
  for (const auto& seq : res.sequences) {
    CategoryPath path = path_from_tokens(seq.tokens);
    if (!path.empty()) out.emplace_back(std::move(path), seq.logprob);
  }
  return out;
}

DecodeResult decode_docids(const ScorerModel& m, const std::vector<std::string>& query,
                           const CategoryPath& path, const TokenTrie& docid_trie,
                           int beam, int max_len) {
  std::vector<std::string> seed = tokenize(linearize(path));
  seed.push_back(kDocSepToken);
  return constrained_beam_search(m, query, docid_trie, beam, max_len, seed);
}

TokenTrie make_path_trie(const std::vector<CategoryPath>& paths) {
  if (paths.empty()) throw std::runtime_error("make_path_trie: no paths");
  std::map<std::vector<std::string>, std::string> unique;
  for (const auto& p : paths) {
    unique.try_emplace(tokenize(linearize(p)), linearize(p));
  }
  TokenTrie trie;
  for (const auto& [tokens, payload] : unique) {
    trie.insert(tokens, payload);
  }
  return trie;
}

TokenTrie make_docid_trie(const DocidTable& table) {
  if (table.entries.empty()) throw std::runtime_error("make_docid_trie: empty table");
  TokenTrie trie;
  for (const auto& [doc_id, tokens] : table.entries) {
    trie.insert(tokens, doc_id);
  }
  return trie;
}

}  // namespace hype
