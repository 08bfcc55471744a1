#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hype {

// Unit-norm dense text embedding; all-zero for degenerate (too short) text.
using EmbeddingVector = std::vector<double>;

class TextEncoder {
 public:
  virtual ~TextEncoder() = default;
  virtual EmbeddingVector embed(const std::string& text) const = 0;
  virtual int dim() const = 0;
};

// Built-in encoder: hashed character 3-grams of the lowercased text,
// bucketed by FNV-1a 64-bit mod dim, then L2-normalized. Pure and
// platform-independent; a learned encoder can be dropped in behind
// TextEncoder.
class NgramHashEncoder : public TextEncoder {
 public:
  explicit NgramHashEncoder(int dim = 1024);
  EmbeddingVector embed(const std::string& text) const override;
  int dim() const override { return dim_; }

 private:
  int dim_;
};

std::uint64_t fnv1a64(std::string_view s);

// Dot product of unit vectors; 0.0 if either side is the zero vector.
// Throws std::runtime_error on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

struct ScoredId {
  std::string id;
  double score;
};

// Top-k items by cosine similarity to the query text, score descending,
// ties by id ascending. Returns min(k, items.size()) entries.
std::vector<ScoredId> top_k(const TextEncoder& encoder, const std::string& query_text,
                            const std::vector<std::pair<std::string, std::string>>& items,
                            std::size_t k);

}  // namespace hype
