#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "punforge/corpus.hpp"
#include "punforge/errors.hpp"

namespace punforge {

// Raised when a query word has no embedding, i.e. no topic words can be had.
class TopicLookupError : public Error {
 public:
  using Error::Error;
};

struct SkipGramConfig {
  std::size_t dim = 300;
  std::size_t d1 = 5;
  std::size_t d2 = 10;
  std::size_t epochs = 15;
  std::size_t negatives = 5;
  double step_size = 0.025;  // initial SGD rate, decayed linearly
  std::uint64_t seed = 1;
};

// (center, context) position pairs whose distance lies in [d1, d2], both
// directions, centers in order, left band before right band.
std::vector<std::pair<std::size_t, std::size_t>> band_pairs(std::size_t length, std::size_t d1,
                                                            std::size_t d2);

struct SgnsGradient {
  std::vector<double> center;                 // dL/d input[center]
  std::vector<double> target;                 // dL/d output[target]
  std::vector<std::vector<double>> negatives;  // dL/d output[negative_k]
};

// Negative-sampling loss for one pair,
//   L = -ln s(u_t . v_c) - sum_k ln s(-u_k . v_c),
// and its analytic gradient when `grad` is non-null.
double sgns_loss(std::span<const double> center, std::span<const double> target,
                 std::span<const std::span<const double>> negatives, SgnsGradient* grad);

// Skip-gram restricted to a distance band: p(w_j | w_i) is a softmax over
// output embeddings dotted with the input embedding of w_i.
class SkipGramModel {
 public:
  SkipGramModel(std::shared_ptr<const Vocabulary> vocab, std::size_t dim, std::size_t d1,
                std::size_t d2);

  static SkipGramModel train(std::span<const Sentence> sentences,
                             std::shared_ptr<const Vocabulary> vocab,
                             const SkipGramConfig& config);
  // Same random initialization train() would start from.
  static SkipGramModel initialize(std::shared_ptr<const Vocabulary> vocab,
                                  const SkipGramConfig& config);

  std::size_t dim() const { return dim_; }
  std::size_t d1() const { return d1_; }
  std::size_t d2() const { return d2_; }
  const Vocabulary& vocab() const { return *vocab_; }

  std::span<double> input(TokenId id) { return {input_.data() + id * dim_, dim_}; }
  std::span<const double> input(TokenId id) const { return {input_.data() + id * dim_, dim_}; }
  std::span<double> output(TokenId id) { return {output_.data() + id * dim_, dim_}; }
  std::span<const double> output(TokenId id) const { return {output_.data() + id * dim_, dim_}; }
  const std::vector<double>& input_table() const { return input_; }
  const std::vector<double>& output_table() const { return output_; }

  // Full softmax over the vocabulary. Throws TopicLookupError for OOV words.
  std::vector<double> relatedness_dist(std::string_view word) const;
  std::vector<double> relatedness_dist(TokenId id) const;

  // Top-k words by p(w | word), renormalized over the vocabulary minus the
  // query word and <unk>. Throws TopicLookupError for OOV words.
  std::vector<std::pair<std::string, double>> predict_topics(std::string_view word,
                                                             std::size_t k) const;

  void save(const std::filesystem::path& path) const;
  static SkipGramModel load(const std::filesystem::path& path,
                            std::shared_ptr<const Vocabulary> vocab);
  // "word dim1 ... dimD" per line, input embeddings.
  void export_text(std::ostream& out) const;

 private:
  TokenId require(std::string_view word) const;

  std::shared_ptr<const Vocabulary> vocab_;
  std::size_t dim_;
  std::size_t d1_;
  std::size_t d2_;
  std::vector<double> input_;
  std::vector<double> output_;
};

}  // namespace punforge
