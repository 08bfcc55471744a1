#include "hype/scorer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hype/trie.hpp"

namespace hype {

using nlohmann::json;

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string piece;
  while (in >> piece) {
    if (piece == kDocSepToken || piece == kEndToken) {
      out.push_back(piece);
      continue;
    }
    std::transform(piece.begin(), piece.end(), piece.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    out.push_back(piece);
  }
  return out;
}

std::vector<std::string> target_sequence(const CategoryPath& path,
                                         const std::vector<std::string>& docid) {
  if (path.empty()) throw std::runtime_error("target_sequence: empty path");
  if (docid.empty()) throw std::runtime_error("target_sequence: empty docid");

  std::vector<std::string> out = tokenize(linearize(path));
  out.push_back(kDocSepToken);
  out.insert(out.end(), docid.begin(), docid.end());
  out.push_back(kEndToken);
  return out;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& token_lists) {
  Vocabulary v;
  v.tokens = {kEndToken, kDocSepToken, kUnkToken, kPathSepToken};
  std::set<std::string> specials(v.tokens.begin(), v.tokens.end());

  std::set<std::string> rest;
  for (const auto& list : token_lists) {
    for (const auto& tok : list) {
      if (!specials.count(tok)) rest.insert(tok);
    }
  }
  v.tokens.insert(v.tokens.end(), rest.begin(), rest.end());
  for (std::size_t i = 0; i < v.tokens.size(); ++i) {
    v.index[v.tokens[i]] = static_cast<int>(i);
  }
  return v;
}

int Vocabulary::id(const std::string& tok) const {
  auto it = index.find(tok);
  return it == index.end() ? -1 : it->second;
}

const std::string& Vocabulary::canonical(const std::string& tok) const {
  static const std::string kUnk = kUnkToken;
  return contains(tok) ? tok : kUnk;
}

std::vector<std::string> Vocabulary::canonicalize(const std::vector<std::string>& toks) const {
  std::vector<std::string> out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(canonical(t));
  return out;
}

double sequence_logprob(const ScorerModel& m, const std::vector<std::string>& input,
                        const std::vector<std::string>& target) {
  if (target.empty() || target.back() != kEndToken) {
    throw std::runtime_error("sequence_logprob: target must end with </s>");
  }
  const double floor = std::log(kProbFloor);
  double sum = 0.0;
  std::vector<std::string> prefix;
  prefix.reserve(target.size());
  for (const auto& tok : target) {
    double p = m.token_prob(input, prefix, tok);
    sum += std::max(std::log(p), floor);
    prefix.push_back(tok);
  }
  return sum;
}

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& key) {
  std::vector<std::string> out;
  std::istringstream in(key);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

void validate(const std::vector<PathAugmentedExample>& examples, const ScorerConfig& config) {
  if (examples.empty()) throw std::runtime_error("train: no examples");
  for (const auto& ex : examples) {
    if (ex.target_path.empty() || ex.target_docid.empty()) {
      throw std::runtime_error("train: example with empty target (input \"" + ex.input +
                               "\")");
    }
  }
  if (config.alpha <= 0.0) throw std::runtime_error("train: alpha must be > 0");
  double sum = 0.0;
  for (double l : config.lambda) {
    if (l < 0.0) throw std::runtime_error("train: lambda weights must be >= 0");
    sum += l;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::runtime_error("train: lambda weights must sum to 1");
  }
}

Vocabulary build_vocab(const std::vector<PathAugmentedExample>& examples,
                       const ScorerConfig& config) {
  std::vector<std::vector<std::string>> lists;
  lists.reserve(examples.size() * 2 + 1);
  for (const auto& ex : examples) {
    lists.push_back(tokenize(ex.input));
    lists.push_back(target_sequence(ex.target_path, ex.target_docid));
  }
  lists.push_back(config.extra_tokens);
  return Vocabulary::build(lists);
}

}  // namespace

// ---------------------------------------------------------------------------
// TabularScorer

std::unique_ptr<TabularScorer> TabularScorer::train(
    const std::vector<PathAugmentedExample>& examples, const ScorerConfig& config) {
  validate(examples, config);
  auto model = std::make_unique<TabularScorer>();
  model->vocab_ = build_vocab(examples, config);

  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  for (const auto& ex : examples) {
    const std::string key = join(tokenize(ex.input));
    const std::string target = join(target_sequence(ex.target_path, ex.target_docid));
    ++counts[key][target];
  }
  for (const auto& [key, per_target] : counts) {
    auto& list = model->targets_[key];
    for (const auto& [target, n] : per_target) {
      list.push_back({split(target), n});
    }
  }
  return model;
}

double TabularScorer::token_prob(const std::vector<std::string>& input,
                                 const std::vector<std::string>& prefix,
                                 const std::string& token) const {
  const double uniform = 1.0 / static_cast<double>(vocab_.size());
  auto it = targets_.find(join(vocab_.canonicalize(input)));
  if (it == targets_.end()) {
    return vocab_.contains(token) ? uniform : 0.0;
  }

  std::uint64_t total = 0;
  std::uint64_t matching = 0;
  for (const auto& stored : it->second) {
    if (stored.tokens.size() <= prefix.size()) continue;
    if (!std::equal(prefix.begin(), prefix.end(), stored.tokens.begin())) continue;
    total += stored.count;
    if (stored.tokens[prefix.size()] == token) matching += stored.count;
  }
  if (total == 0) {
    return vocab_.contains(token) ? uniform : 0.0;
  }
  return static_cast<double>(matching) / static_cast<double>(total);
}

std::vector<double> TabularScorer::next_token_dist(
    const std::vector<std::string>& input, const std::vector<std::string>& prefix) const {
  std::vector<double> dist(vocab_.size(), 0.0);
  auto fill_uniform = [&] {
    std::fill(dist.begin(), dist.end(), 1.0 / static_cast<double>(vocab_.size()));
  };

  auto it = targets_.find(join(vocab_.canonicalize(input)));
  if (it == targets_.end()) {
    fill_uniform();
    return dist;
  }
  std::uint64_t total = 0;
  for (const auto& stored : it->second) {
    if (stored.tokens.size() <= prefix.size()) continue;
    if (!std::equal(prefix.begin(), prefix.end(), stored.tokens.begin())) continue;
    total += stored.count;
    int id = vocab_.id(stored.tokens[prefix.size()]);
    if (id >= 0) dist[static_cast<std::size_t>(id)] += static_cast<double>(stored.count);
  }
  if (total == 0) {
    fill_uniform();
    return dist;
  }
  for (double& p : dist) p /= static_cast<double>(total);
  return dist;
}

json TabularScorer::to_json() const {
  json counts = json::object();
  for (const auto& [key, list] : targets_) {
    json per_target = json::object();
    for (const auto& stored : list) per_target[join(stored.tokens)] = stored.count;
    counts[key] = std::move(per_target);
  }
  return json{{"kind", "tabular"},
              {"lambda", json::array({0.0, 0.0, 0.0})},
              {"alpha", 0.0},
              {"vocab", vocab_.tokens},
              {"counts", {{"targets", counts}}}};
}

std::unique_ptr<TabularScorer> TabularScorer::from_json(const json& doc) {
  auto model = std::make_unique<TabularScorer>();
  model->vocab_.tokens = doc.at("vocab").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < model->vocab_.tokens.size(); ++i) {
    model->vocab_.index[model->vocab_.tokens[i]] = static_cast<int>(i);
  }
  for (const auto& [key, per_target] : doc.at("counts").at("targets").items()) {
    auto& list = model->targets_[key];
    for (const auto& [target, n] : per_target.items()) {
      list.push_back({split(target), n.get<std::uint64_t>()});
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// MixtureScorer

std::unique_ptr<MixtureScorer> MixtureScorer::train(
    const std::vector<PathAugmentedExample>& examples, const ScorerConfig& config) {
  validate(examples, config);
  auto model = std::make_unique<MixtureScorer>();
  model->vocab_ = build_vocab(examples, config);
  model->lambda_ = config.lambda;
  model->alpha_ = config.alpha;

  for (const auto& ex : examples) {
    const auto input = tokenize(ex.input);
    const auto target = target_sequence(ex.target_path, ex.target_docid);

    std::string context = kBosContext;
    for (const auto& tok : target) {
      ++model->bigram_[context][tok];
      ++model->bigram_totals_[context];
      ++model->unigram_[tok];
      ++model->unigram_total_;
      for (const auto& w : input) {
        ++model->translation_[w][tok];
        ++model->translation_totals_[w];
      }
      context = tok;
    }
  }
  return model;
}

double MixtureScorer::component(const std::unordered_map<std::string, CountRow>& table,
                                const std::unordered_map<std::string, std::uint64_t>& totals,
                                const std::string& row, const std::string& token) const {
  std::uint64_t count = 0;
  auto rit = table.find(row);
  if (rit != table.end()) {
    auto cit = rit->second.find(token);
    if (cit != rit->second.end()) count = cit->second;
  }
  std::uint64_t total = 0;
  auto tit = totals.find(row);
  if (tit != totals.end()) total = tit->second;

  const double v = static_cast<double>(vocab_.size());
  return (static_cast<double>(count) + alpha_) / (static_cast<double>(total) + alpha_ * v);
}

double MixtureScorer::unigram(const std::string& token) const {
  std::uint64_t count = 0;
  auto it = unigram_.find(token);
  if (it != unigram_.end()) count = it->second;
  const double v = static_cast<double>(vocab_.size());
  return (static_cast<double>(count) + alpha_) /
         (static_cast<double>(unigram_total_) + alpha_ * v);
}

double MixtureScorer::token_prob(const std::vector<std::string>& input,
                                 const std::vector<std::string>& prefix,
                                 const std::string& token) const {
  const std::string& context = prefix.empty() ? kBosContext : vocab_.canonical(prefix.back());
  const double p_bi = component(bigram_, bigram_totals_, context, token);
  const double p_uni = unigram(token);

  if (input.empty()) {
    const double rest = lambda_[0] + lambda_[2];
    if (rest <= 0.0) return p_uni;
    return (lambda_[0] * p_bi + lambda_[2] * p_uni) / rest;
  }

  double p_tr = 0.0;
  for (const auto& w : input) {
    p_tr += component(translation_, translation_totals_, vocab_.canonical(w), token);
  }
  p_tr /= static_cast<double>(input.size());

  return lambda_[0] * p_bi + lambda_[1] * p_tr + lambda_[2] * p_uni;
}

std::vector<double> MixtureScorer::next_token_dist(
    const std::vector<std::string>& input, const std::vector<std::string>& prefix) const {
  std::vector<double> dist(vocab_.size());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    dist[i] = token_prob(input, prefix, vocab_.tokens[i]);
  }
  return dist;
}

json MixtureScorer::to_json() const {
  auto rows_to_json = [](const std::unordered_map<std::string, CountRow>& table) {
    json out = json::object();
    for (const auto& [row, counts] : table) {
      json row_json = json::object();
      for (const auto& [tok, n] : counts) row_json[tok] = n;
      out[row] = std::move(row_json);
    }
    return out;
  };
  json uni = json::object();
  for (const auto& [tok, n] : unigram_) uni[tok] = n;

  return json{{"kind", "mixture"},
              {"lambda", lambda_},
              {"alpha", alpha_},
              {"vocab", vocab_.tokens},
              {"counts",
               {{"bigram", rows_to_json(bigram_)},
                {"translation", rows_to_json(translation_)},
                {"unigram", std::move(uni)}}}};
}

std::unique_ptr<MixtureScorer> MixtureScorer::from_json(const json& doc) {
  auto model = std::make_unique<MixtureScorer>();
  model->vocab_.tokens = doc.at("vocab").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < model->vocab_.tokens.size(); ++i) {
    model->vocab_.index[model->vocab_.tokens[i]] = static_cast<int>(i);
  }
  model->lambda_ = doc.at("lambda").get<std::array<double, 3>>();
  model->alpha_ = doc.at("alpha").get<double>();

  auto load_rows = [](const json& rows, std::unordered_map<std::string, CountRow>& table,
                      std::unordered_map<std::string, std::uint64_t>& totals) {
    for (const auto& [row, counts] : rows.items()) {
      std::uint64_t total = 0;
      for (const auto& [tok, n] : counts.items()) {
        table[row][tok] = n.get<std::uint64_t>();
        total += n.get<std::uint64_t>();
      }
      totals[row] = total;
    }
  };
  const json& counts = doc.at("counts");
  load_rows(counts.at("bigram"), model->bigram_, model->bigram_totals_);
  load_rows(counts.at("translation"), model->translation_, model->translation_totals_);
  for (const auto& [tok, n] : counts.at("unigram").items()) {
    model->unigram_[tok] = n.get<std::uint64_t>();
    model->unigram_total_ += n.get<std::uint64_t>();
  }
  return model;
}

// ---------------------------------------------------------------------------

std::unique_ptr<ScorerModel> train_scorer(const std::vector<PathAugmentedExample>& examples,
                                          const ScorerConfig& config) {
  if (config.kind == "tabular") return TabularScorer::train(examples, config);
  if (config.kind == "mixture") return MixtureScorer::train(examples, config);
  throw std::runtime_error("unknown scorer kind: " + config.kind);
}

std::unique_ptr<ScorerModel> scorer_from_json(const json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "tabular") return TabularScorer::from_json(doc);
  if (kind == "mixture") return MixtureScorer::from_json(doc);
  throw std::runtime_error("unknown scorer kind: " + kind);
}

void save_scorer(const ScorerModel& m, const std::string& file_path) {
  std::ofstream out(file_path);
  if (!out) throw std::runtime_error("cannot write model: " + file_path);
  out << m.to_json().dump(2) << "\n";
}

std::unique_ptr<ScorerModel> load_scorer(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in) throw std::runtime_error("cannot open model: " + file_path);
  return scorer_from_json(json::parse(in));
}

}  // namespace hype
