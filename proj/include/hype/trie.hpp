#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hype {

inline constexpr const char* kEndToken = "</s>";

// Prefix tree over token sequences. Every inserted sequence is terminated
// with kEndToken so that no accepted word is a strict prefix of another;
// the terminal node stores an opaque payload (doc_id or linearized path).
class TokenTrie {
 public:
  struct Node {
    // std::map keeps child iteration deterministic
    std::map<std::string, std::unique_ptr<Node>> children;
    bool terminal = false;
    std::string payload;
  };

  TokenTrie() : root_(std::make_unique<Node>()) {}

  // Inserts tokens + kEndToken. Throws if the same sequence was already
  // inserted with a different payload.
  void insert(const std::vector<std::string>& tokens, const std::string& payload);

  const Node* root() const { return root_.get(); }
  std::size_t word_count() const { return words_; }
  bool empty() const { return words_ == 0; }

  // True when tokens + kEndToken spells exactly one inserted sequence.
  bool accepts(const std::vector<std::string>& tokens) const;
  const Node* walk(const std::vector<std::string>& tokens) const;

  // All inserted sequences (without the end token), with payloads,
  // in deterministic (token-lexicographic) order.
  std::vector<std::pair<std::vector<std::string>, std::string>> words() const;

 private:
  std::unique_ptr<Node> root_;
  std::size_t words_ = 0;
};

// Trie over the given (token sequence, payload) pairs. Throws on empty
// input, an empty token list, or duplicate sequences with different payloads.
TokenTrie build_trie(
    const std::vector<std::pair<std::vector<std::string>, std::string>>& sequences);

}  // namespace hype
