#include "hype/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hype {

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

NgramHashEncoder::NgramHashEncoder(int dim) : dim_(dim) {
  if (dim_ < 1) throw std::runtime_error("encoder dim must be >= 1");
}

EmbeddingVector NgramHashEncoder::embed(const std::string& text) const {
  EmbeddingVector v(static_cast<std::size_t>(dim_), 0.0);

  std::string s = text;
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return v;
  auto end = s.find_last_not_of(" \t\r\n");
  s = s.substr(begin, end - begin + 1);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s.size() < 3) return v;

  for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
    std::uint64_t bucket = fnv1a64(std::string_view(s).substr(i, 3)) %
                           static_cast<std::uint64_t>(dim_);
    v[bucket] += 1.0;
  }

  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) {
    throw std::runtime_error("cosine: dimension mismatch");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return dot;
}

std::vector<ScoredId> top_k(const TextEncoder& encoder, const std::string& query_text,
                            const std::vector<std::pair<std::string, std::string>>& items,
                            std::size_t k) {
  if (k < 1) throw std::runtime_error("top_k: k must be >= 1");
  EmbeddingVector q = encoder.embed(query_text);

  std::vector<ScoredId> scored;
  scored.reserve(items.size());
  for (const auto& [id, text] : items) {
    scored.push_back({id, cosine(q, encoder.embed(text))});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredId& a, const ScoredId& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace hype
