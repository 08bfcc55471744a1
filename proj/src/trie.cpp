#include "hype/trie.hpp"

#include <stdexcept>

namespace hype {

void TokenTrie::insert(const std::vector<std::string>& tokens, const std::string& payload) {
  if (tokens.empty()) throw std::runtime_error("trie: empty token sequence");

  Node* node = root_.get();
  for (const auto& tok : tokens) {
    auto& child = node->children[tok];
    if (!child) child = std::make_unique<Node>();
    node = child.get();
  }
  auto& end = node->children[kEndToken];
  if (!end) end = std::make_unique<Node>();
  if (end->terminal) {
    if (end->payload != payload) {
      throw std::runtime_error("trie: duplicate sequence with conflicting payloads (\"" +
                               end->payload + "\" vs \"" + payload + "\")");
    }
    return;
  }
  end->terminal = true;
  end->payload = payload;
  ++words_;
}

const TokenTrie::Node* TokenTrie::walk(const std::vector<std::string>& tokens) const {
  const Node* node = root_.get();
  for (const auto& tok : tokens) {
    auto it = node->children.find(tok);
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return node;
}

bool TokenTrie::accepts(const std::vector<std::string>& tokens) const {
  const Node* node = walk(tokens);
  if (!node) return false;
  auto it = node->children.find(kEndToken);
  return it != node->children.end() && it->second->terminal;
}

namespace {

void collect(const TokenTrie::Node* node, std::vector<std::string>& prefix,
             std::vector<std::pair<std::vector<std::string>, std::string>>& out) {
  if (node->terminal) {
    // prefix currently ends with the end token; strip it for callers
    std::vector<std::string> word(prefix.begin(), prefix.end() - 1);
    out.emplace_back(std::move(word), node->payload);
  }
  for (const auto& [tok, child] : node->children) {
    prefix.push_back(tok);
    collect(child.get(), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<std::pair<std::vector<std::string>, std::string>> TokenTrie::words() const {
  std::vector<std::pair<std::vector<std::string>, std::string>> out;
  std::vector<std::string> prefix;
  collect(root_.get(), prefix, out);
  return out;
}

TokenTrie build_trie(
    const std::vector<std::pair<std::vector<std::string>, std::string>>& sequences) {
  if (sequences.empty()) throw std::runtime_error("build_trie: no sequences");
  TokenTrie trie;
  for (const auto& [tokens, payload] : sequences) {
    trie.insert(tokens, payload);
  }
  return trie;
}

}  // namespace hype
