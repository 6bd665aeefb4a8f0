#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "punforge/corpus.hpp"

namespace punforge {

// Anything that can assign conditional and unigram probabilities to token ids.
// The surprisal metrics only talk to this interface.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual int order() const = 0;
  virtual TokenId bos() const = 0;
  virtual TokenId eos() const = 0;
  // Maps a surface form to its id, UNK for out-of-vocabulary words.
  virtual TokenId lookup(std::string_view word) const = 0;
  // Natural-log p(word | history). Only the last order()-1 entries of the
  // history are consulted.
  virtual double logprob(TokenId word, std::span<const TokenId> history) const = 0;
  virtual double unigram_logprob(TokenId word) const = 0;
};

// Sum of ln p(x_i | x_{i-n+1..i-1}) with contexts clipped at the sequence
// start. With boundary markers, <s> is prepended as history and </s> is
// scored at the end.
double logprob_seq(const LanguageModel& lm, std::span<const TokenId> tokens,
                   bool boundary_markers);

// Interpolated modified Kneser-Ney model.
//
// Highest-order n-grams and n-grams starting with <s> keep their raw counts;
// every other lower-order n-gram uses its number of distinct left extensions.
// Three discounts per order come from the counts of counts n1..n4 of those
// adjusted counts:
//   Y = n1 / (n1 + 2 n2),  D1 = 1 - 2Y n2/n1,  D2 = 2 - 3Y n3/n2,  D3+ = 3 - 4Y n4/n3
// and fall back to 0.75 when any n_i is zero or a discount leaves (0, i].
// The recursion bottoms out in the uniform distribution over the vocabulary
// plus </s>.
class NGramModel final : public LanguageModel {
 public:
  static constexpr int kMinOrder = 2;
  static constexpr int kMaxOrder = 6;
  static constexpr double kFallbackDiscount = 0.75;

  static NGramModel train(std::span<const Sentence> sentences,
                          std::shared_ptr<const Vocabulary> vocab, int order);

  int order() const override { return order_; }
  TokenId bos() const override { return static_cast<TokenId>(vocab_->size()); }
  TokenId eos() const override { return static_cast<TokenId>(vocab_->size() + 1); }
  TokenId lookup(std::string_view word) const override { return vocab_->id(word); }
  double logprob(TokenId word, std::span<const TokenId> history) const override;
  double unigram_logprob(TokenId word) const override;

  double prob(TokenId word, std::span<const TokenId> history) const;

  const Vocabulary& vocab() const { return *vocab_; }
  // Discounts (D1, D2, D3+) for n-grams of the given length, 1-based.
  const std::array<double, 3>& discounts(int length) const { return discounts_.at(length - 1); }
  // Interpolation weight of a context that has been observed, or 1 when the
  // context is unseen (the model then backs off entirely).
  double backoff_weight(std::span<const TokenId> context) const;

  void save(const std::filesystem::path& path) const;
  static NGramModel load(const std::filesystem::path& path,
                         std::shared_ptr<const Vocabulary> vocab);

 private:
  using Key = std::u32string;
  struct Level {
    std::unordered_map<Key, double> alpha;  // discounted mass of seen n-grams
    std::unordered_map<Key, double> gamma;  // interpolation weight per context
  };

  NGramModel() = default;
  TokenId clamp_id(TokenId id) const;
  double prob_recursive(TokenId word, const TokenId* hist, std::size_t len) const;

  int order_ = 0;
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<Level> levels_;  // levels_[k-1] holds n-grams of length k
  std::vector<std::array<double, 3>> discounts_;
};

}  // namespace punforge
