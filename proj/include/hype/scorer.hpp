#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hype/dataset.hpp"

namespace hype {

inline constexpr const char* kDocSepToken = "[DOC]";
inline constexpr const char* kUnkToken = "[UNK]";
inline constexpr const char* kPathSepToken = ">";
inline constexpr const char* kBosContext = "<s>";  // bigram sentinel, not a vocab token

// Probabilities below this are floored when accumulated in log space, so a
// trie-forced token the model assigns ~0 mass cannot produce -inf scores.
inline constexpr double kProbFloor = 1e-12;

// Whitespace split; "[DOC]" and "</s>" kept verbatim, everything else
// lowercased. ">" standing alone is its own token.
std::vector<std::string> tokenize(const std::string& text);

// tokenize(linearize(path)) ++ [DOC] ++ docid ++ </s>
std::vector<std::string> target_sequence(const CategoryPath& path,
                                         const std::vector<std::string>& docid);

struct Vocabulary {
  std::vector<std::string> tokens;               // specials first, then sorted
  std::unordered_map<std::string, int> index;

  static Vocabulary build(const std::vector<std::vector<std::string>>& token_lists);

  std::size_t size() const { return tokens.size(); }
  bool contains(const std::string& tok) const { return index.count(tok) > 0; }
  int id(const std::string& tok) const;
  // tok itself when known, [UNK] otherwise
  const std::string& canonical(const std::string& tok) const;
  std::vector<std::string> canonicalize(const std::vector<std::string>& toks) const;
};

struct ScorerConfig {
  std::string kind = "mixture";  // "tabular" | "mixture"
  std::array<double, 3> lambda{0.4, 0.5, 0.1};
  double alpha = 0.1;
  // Tokens that must be in-vocabulary beyond the examples (docid table tokens).
  std::vector<std::string> extra_tokens;
};

// Conditional next-token model over target sequences "path [DOC] docid </s>".
// Implementations must be immutable after construction and pure, so scoring
// can run in parallel across queries.
class ScorerModel {
 public:
  virtual ~ScorerModel() = default;

  virtual std::string kind() const = 0;
  virtual const Vocabulary& vocab() const = 0;

  // Distribution over the vocabulary for the token following `prefix`.
  // Sums to 1 within 1e-9; strictly positive everywhere for the mixture.
  virtual std::vector<double> next_token_dist(const std::vector<std::string>& input,
                                              const std::vector<std::string>& prefix) const = 0;

  // Probability of one specific continuation token; tokens outside the
  // vocabulary get the model's unsmoothed-zero treatment (0 for tabular,
  // add-alpha floor for the mixture) so constrained decoding stays defined.
  virtual double token_prob(const std::vector<std::string>& input,
                            const std::vector<std::string>& prefix,
                            const std::string& token) const = 0;

  virtual nlohmann::json to_json() const = 0;
};

// Sum of per-step log probabilities, each floored at ln(kProbFloor).
// Target must end with "</s>".
double sequence_logprob(const ScorerModel& m, const std::vector<std::string>& input,
                        const std::vector<std::string>& target);

// Exact memorization model: stores count(input tokens -> full target
// sequence) and answers conditionals by prefix matching over the stored
// targets; unseen inputs and dead-end prefixes fall back to uniform.
class TabularScorer : public ScorerModel {
 public:
  std::string kind() const override { return "tabular"; }
  const Vocabulary& vocab() const override { return vocab_; }
  std::vector<double> next_token_dist(const std::vector<std::string>& input,
                                      const std::vector<std::string>& prefix) const override;
  double token_prob(const std::vector<std::string>& input,
                    const std::vector<std::string>& prefix,
                    const std::string& token) const override;
  nlohmann::json to_json() const override;

  static std::unique_ptr<TabularScorer> train(
      const std::vector<PathAugmentedExample>& examples, const ScorerConfig& config);
  static std::unique_ptr<TabularScorer> from_json(const nlohmann::json& doc);

 private:
  struct StoredTarget {
    std::vector<std::string> tokens;
    std::uint64_t count = 0;
  };

  Vocabulary vocab_;
  // input key (space-joined tokens) -> targets sorted by token sequence
  std::map<std::string, std::vector<StoredTarget>> targets_;
};

// Count-based interpolated model:
//   P(t | x, h) = l1 * P_bi(t | last(h)) + l2 * mean_w P_tr(t | w) + l3 * P_uni(t)
// with each component add-alpha smoothed over the vocabulary. An empty input
// drops the translation term and renormalizes the remaining weights.
class MixtureScorer : public ScorerModel {
 public:
  std::string kind() const override { return "mixture"; }
  const Vocabulary& vocab() const override { return vocab_; }
  std::vector<double> next_token_dist(const std::vector<std::string>& input,
                                      const std::vector<std::string>& prefix) const override;
  double token_prob(const std::vector<std::string>& input,
                    const std::vector<std::string>& prefix,
                    const std::string& token) const override;
  nlohmann::json to_json() const override;

  static std::unique_ptr<MixtureScorer> train(
      const std::vector<PathAugmentedExample>& examples, const ScorerConfig& config);
  static std::unique_ptr<MixtureScorer> from_json(const nlohmann::json& doc);

 private:
  using CountRow = std::unordered_map<std::string, std::uint64_t>;

  double component(const std::unordered_map<std::string, CountRow>& table,
                   const std::unordered_map<std::string, std::uint64_t>& totals,
                   const std::string& row, const std::string& token) const;
  double unigram(const std::string& token) const;

  Vocabulary vocab_;
  std::array<double, 3> lambda_{0.4, 0.5, 0.1};
  double alpha_ = 0.1;

  std::unordered_map<std::string, CountRow> bigram_;       // context -> token -> n
  std::unordered_map<std::string, CountRow> translation_;  // input token -> token -> n
  CountRow unigram_;
  std::unordered_map<std::string, std::uint64_t> bigram_totals_;
  std::unordered_map<std::string, std::uint64_t> translation_totals_;
  std::uint64_t unigram_total_ = 0;
};

// Builds the vocabulary from example inputs, targets and config.extra_tokens,
// then trains the configured kind. Deterministic and example-order-invariant.
std::unique_ptr<ScorerModel> train_scorer(const std::vector<PathAugmentedExample>& examples,
                                          const ScorerConfig& config);

void save_scorer(const ScorerModel& m, const std::string& file_path);
std::unique_ptr<ScorerModel> load_scorer(const std::string& file_path);
std::unique_ptr<ScorerModel> scorer_from_json(const nlohmann::json& doc);

}  // namespace hype
