#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hype/corpus.hpp"
#include "hype/scorer.hpp"
#include "hype/taxonomy.hpp"
#include "hype/trie.hpp"

namespace hype {

struct BeamHypothesis {
  std::vector<std::string> tokens;  // generated tokens, a valid trie prefix
  double logprob = 0.0;
  const TokenTrie::Node* node = nullptr;
  bool finished = false;
};

struct DecodedSequence {
  std::vector<std::string> tokens;  // end token stripped
  double logprob = 0.0;
  std::string payload;
};

struct DecodeResult {
  std::vector<DecodedSequence> sequences;  // logprob descending, ties token-lex ascending
};

// Beam search restricted at every step to the children of each hypothesis's
// trie node. Finished hypotheses are set aside and do not occupy beam slots.
// `seed_prefix` pre-conditions the model (its tokens are fed as context but
// contribute nothing to the score). Scores are raw sums of token log
// probabilities including "</s>", no length normalization.
DecodeResult constrained_beam_search(const ScorerModel& m,
                                     const std::vector<std::string>& input,
                                     const TokenTrie& trie, int beam, int max_len,
                                     const std::vector<std::string>& seed_prefix = {});

// Beam search over the whole vocabulary (no trie), finishing on "</s>".
DecodeResult unconstrained_beam_search(const ScorerModel& m,
                                       const std::vector<std::string>& input, int beam,
                                       int max_len);

// Stage 1: decode up to k_paths category paths for the query, beam = k_paths.
// With constrain=false paths are generated freely and parsed best-effort.
std::vector<std::pair<CategoryPath, double>> generate_paths(
    const ScorerModel& m, const std::vector<std::string>& query,
    const TokenTrie& path_trie, int k_paths, bool constrain = true, int max_len = 64);

// Stage 2: decode docids with the decoder context pre-seeded to
// "path tokens [DOC]"; reported scores cover docid tokens and "</s>" only.
DecodeResult decode_docids(const ScorerModel& m, const std::vector<std::string>& query,
                           const CategoryPath& path, const TokenTrie& docid_trie,
                           int beam, int max_len = 64);

// Trie over tokenized linearized paths; payload = linearized path. Paths that
// tokenize identically keep the first occurrence.
TokenTrie make_path_trie(const std::vector<CategoryPath>& paths);

// Trie over docid token sequences; payload = doc_id.
TokenTrie make_docid_trie(const DocidTable& table);

}  // namespace hype
