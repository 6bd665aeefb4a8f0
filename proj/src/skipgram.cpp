#include "punforge/skipgram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "punforge/binary_io.hpp"

namespace punforge {

namespace {

constexpr std::string_view kSgMagic = "PGSG";
constexpr std::uint32_t kSgVersion = 1;
constexpr double kMinRateFraction = 1e-4;
constexpr double kNoisePower = 0.75;

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// log sigma(x) without overflow.
double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

std::vector<double> softmax(std::vector<double> scores) {
  const double mx = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (auto& s : scores) {
    s = std::exp(s - mx);
    z += s;
  }
  for (auto& s : scores) s /= z;
  return scores;
}

void check_config(const SkipGramConfig& c) {
  if (c.dim < 1) throw InvalidArgument("embedding dimension must be >= 1");
  if (c.d1 < 1 || c.d1 > c.d2) throw InvalidArgument("distance band needs 1 <= d1 <= d2");
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> band_pairs(std::size_t length, std::size_t d1,
                                                            std::size_t d2) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < length; ++i) {
    for (std::size_t d = d2; d >= d1 && d > 0; --d) {
      if (d <= i) out.emplace_back(i, i - d);
    }
    for (std::size_t d = d1; d <= d2; ++d) {
      if (i + d < length) out.emplace_back(i, i + d);
    }
  }
  return out;
}

double sgns_loss(std::span<const double> center, std::span<const double> target,
                 std::span<const std::span<const double>> negatives, SgnsGradient* grad) {
  const std::size_t dim = center.size();
  const double pos = dot(target, center);
  double loss = -log_sigmoid(pos);
  if (grad) {
    grad->center.assign(dim, 0.0);
    grad->target.resize(dim);
    grad->negatives.resize(negatives.size());
    const double g = sigmoid(pos) - 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      grad->center[i] += g * target[i];
      grad->target[i] = g * center[i];
    }
  }
  for (std::size_t k = 0; k < negatives.size(); ++k) {
    const auto& u = negatives[k];
    const double s = dot(u, center);
    loss -= log_sigmoid(-s);
    if (grad) {
      const double g = sigmoid(s);
      auto& gk = grad->negatives[k];
      gk.resize(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        grad->center[i] += g * u[i];
        gk[i] = g * center[i];
      }
    }
  }
  return loss;
}

SkipGramModel::SkipGramModel(std::shared_ptr<const Vocabulary> vocab, std::size_t dim,
                             std::size_t d1, std::size_t d2)
    : vocab_(std::move(vocab)), dim_(dim), d1_(d1), d2_(d2) {
  if (!vocab_) throw InvalidArgument("skip-gram model needs a vocabulary");
  if (dim_ < 1) throw InvalidArgument("embedding dimension must be >= 1");
  if (d1_ < 1 || d1_ > d2_) throw InvalidArgument("distance band needs 1 <= d1 <= d2");
  input_.assign(vocab_->size() * dim_, 0.0);
  output_.assign(vocab_->size() * dim_, 0.0);
}

SkipGramModel SkipGramModel::initialize(std::shared_ptr<const Vocabulary> vocab,
                                        const SkipGramConfig& config) {
  check_config(config);
  SkipGramModel m(std::move(vocab), config.dim, config.d1, config.d2);
  std::mt19937_64 rng(config.seed);
  const double scale = 1.0 / static_cast<double>(config.dim);
  for (auto& x : m.input_) x = (unit(rng) - 0.5) * scale;
  return m;
}

SkipGramModel SkipGramModel::train(std::span<const Sentence> sentences,
                                   std::shared_ptr<const Vocabulary> vocab,
                                   const SkipGramConfig& config) {
  check_config(config);
  if (sentences.empty()) throw InvalidArgument("skip-gram training needs a non-empty corpus");

  std::vector<std::vector<TokenId>> encoded;
  encoded.reserve(sentences.size());
  std::uint64_t pairs_per_epoch = 0;
  for (const auto& s : sentences) {
    encoded.push_back(vocab->encode(s));
    pairs_per_epoch += band_pairs(s.size(), config.d1, config.d2).size();
  }
  if (pairs_per_epoch == 0) {
    throw InvalidArgument("no training pairs: every sentence is shorter than d1 + 1");
  }

  SkipGramModel m = initialize(vocab, config);
  // The initializer consumed its own stream; sampling uses a second one so
  // that zero epochs leave the initialization untouched.
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  std::vector<double> noise_cdf(vocab->size());
  double acc = 0.0;
  for (TokenId w = 0; w < vocab->size(); ++w) {
    acc += std::pow(static_cast<double>(vocab->count(w)), kNoisePower);
    noise_cdf[w] = acc;
  }
  auto sample_noise = [&]() -> TokenId {
    const double u = unit(rng) * acc;
    auto it = std::upper_bound(noise_cdf.begin(), noise_cdf.end(), u);
    if (it == noise_cdf.end()) --it;
    return static_cast<TokenId>(it - noise_cdf.begin());
  };

  const double total_steps = static_cast<double>(pairs_per_epoch * config.epochs);
  double step = 0.0;
  SgnsGradient grad;
  std::vector<TokenId> negatives;
  std::vector<std::span<const double>> neg_vecs;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (const auto& ids : encoded) {
      for (const auto& [ci, xi] : band_pairs(ids.size(), config.d1, config.d2)) {
        const TokenId center = ids[ci];
        const TokenId target = ids[xi];
        const double rate =
            config.step_size * std::max(kMinRateFraction, 1.0 - step / total_steps);
        step += 1.0;

        negatives.clear();
        for (std::size_t k = 0; k < config.negatives; ++k) {
          const TokenId w = sample_noise();
          if (w != target) negatives.push_back(w);
        }
        neg_vecs.clear();
        for (auto w : negatives) neg_vecs.push_back(m.output(w));

        sgns_loss(m.input(center), m.output(target), neg_vecs, &grad);
        auto v = m.input(center);
        auto u = m.output(target);
        for (std::size_t i = 0; i < m.dim_; ++i) u[i] -= rate * grad.target[i];
        for (std::size_t k = 0; k < negatives.size(); ++k) {
          auto un = m.output(negatives[k]);
          for (std::size_t i = 0; i < m.dim_; ++i) un[i] -= rate * grad.negatives[k][i];
        }
        for (std::size_t i = 0; i < m.dim_; ++i) v[i] -= rate * grad.center[i];
      }
    }
  }
  return m;
}

TokenId SkipGramModel::require(std::string_view word) const {
  if (!vocab_->contains(word)) {
    throw TopicLookupError("fail to obtain topic words: '" + std::string(word) +
                           "' is not in the skip-gram vocabulary");
  }
  return vocab_->id(word);
}

std::vector<double> SkipGramModel::relatedness_dist(TokenId id) const {
  if (id >= vocab_->size()) throw TopicLookupError("token id out of range");
  const auto v = input(id);
  std::vector<double> scores(vocab_->size());
  for (TokenId w = 0; w < vocab_->size(); ++w) scores[w] = dot(output(w), v);
  return softmax(std::move(scores));
}

std::vector<double> SkipGramModel::relatedness_dist(std::string_view word) const {
  return relatedness_dist(require(word));
}

std::vector<std::pair<std::string, double>> SkipGramModel::predict_topics(std::string_view word,
                                                                          std::size_t k) const {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  const TokenId q = require(word);
  const auto v = input(q);
  std::vector<TokenId> eligible;
  std::vector<double> scores;
  for (TokenId w = 0; w < vocab_->size(); ++w) {
    if (w == q || w == Vocabulary::kUnk) continue;
    eligible.push_back(w);
    scores.push_back(dot(output(w), v));
  }
  if (eligible.empty()) return {};
  const auto probs = softmax(std::move(scores));
  std::vector<std::size_t> order(eligible.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t top = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return probs[a] != probs[b] ? probs[a] > probs[b] : eligible[a] < eligible[b];
                    });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(top);
  for (std::size_t i = 0; i < top; ++i) {
    out.emplace_back(vocab_->word(eligible[order[i]]), probs[order[i]]);
  }
  return out;
}

void SkipGramModel::save(const std::filesystem::path& path) const {
  BinaryWriter head;
  head.u32(kSgVersion);
  head.u64(vocab_->hash());
  head.u64(vocab_->size());
  head.u64(dim_);
  head.u64(d1_);
  head.u64(d2_);
  BinaryWriter in, out;
  for (double x : input_) in.f64(x);
  for (double x : output_) out.f64(x);
  write_file(path, write_container(kSgMagic, {{"HEAD", head.take()},
                                              {"EMBI", in.take()},
                                              {"EMBO", out.take()}}));
}

SkipGramModel SkipGramModel::load(const std::filesystem::path& path,
                                  std::shared_ptr<const Vocabulary> vocab) {
  const auto data = read_file(path);
  auto sections = read_container(data, kSgMagic, path.string());
  for (const char* tag : {"HEAD", "EMBI", "EMBO"}) {
    if (!sections.count(tag)) throw FormatError(path.string() + ": missing section " + tag);
  }
  BinaryReader head(sections["HEAD"], path.string() + " HEAD");
  if (head.u32() != kSgVersion) head.fail("unsupported version");
  const auto hash = head.u64();
  const auto size = head.u64();
  if (!vocab || hash != vocab->hash() || size != vocab->size()) {
    throw FormatError(path.string() + ": vocabulary hash mismatch");
  }
  const auto dim = head.u64();
  const auto d1 = head.u64();
  const auto d2 = head.u64();
  SkipGramModel m(std::move(vocab), dim, d1, d2);
  for (auto [tag, table] : {std::pair{"EMBI", &m.input_}, std::pair{"EMBO", &m.output_}}) {
    BinaryReader r(sections[tag], path.string() + " " + tag);
    if (r.remaining() != table->size() * 8) r.fail("embedding table size mismatch");
    for (auto& x : *table) {
      x = r.f64();
      if (!std::isfinite(x)) r.fail("non-finite embedding value");
    }
  }
  return m;
}

void SkipGramModel::export_text(std::ostream& out) const {
  const auto old = out.precision(9);
  for (TokenId w = 0; w < vocab_->size(); ++w) {
    out << vocab_->word(w);
    for (double x : input(w)) out << ' ' << x;
    out << '\n';
  }
  out.precision(old);
}

}  // namespace punforge
