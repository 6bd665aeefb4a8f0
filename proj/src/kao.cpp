#include "punforge/kao.hpp"

#include <algorithm>
#include <cmath>

#include "punforge/errors.hpp"

namespace punforge {

namespace {

constexpr double kClamp = 1e-9;

double bernoulli_kl(double p, double q) {
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

double entropy_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

}  // namespace

std::vector<std::size_t> content_positions(const Sentence& sentence, std::size_t pun_position) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i == pun_position) continue;
    const auto& w = sentence.word(i);
    if (TagLexicon::is_punctuation(w) || TagLexicon::is_stopword(w)) continue;
    out.push_back(i);
  }
  return out;
}

KaoPosterior posterior(const KaoTables& tables) {
  const std::size_t n = tables.unigram.size();
  if (tables.rel_pun.size() != n || tables.rel_alt.size() != n) {
    throw InvalidArgument("Kao tables must have equal lengths");
  }
  KaoPosterior post;
  post.f_pun.resize(n);
  post.f_alt.resize(n);
  double log_pun = 0.0;
  double log_alt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mp = 0.5 * tables.unigram[i] + 0.5 * tables.rel_pun[i];
    const double ma = 0.5 * tables.unigram[i] + 0.5 * tables.rel_alt[i];
    log_pun += std::log(mp);
    log_alt += std::log(ma);
    post.f_pun[i] = 0.5 * tables.rel_pun[i] / mp;
    post.f_alt[i] = 0.5 * tables.rel_alt[i] / ma;
  }
  // Equal priors cancel.
  post.p_pun = 1.0 / (1.0 + std::exp(log_alt - log_pun));
  return post;
}

KaoPosterior posterior(const LanguageModel& unigram, const SkipGramModel& rel,
                       const Sentence& sentence, const PunPair& pair, std::size_t pun_position) {
  const auto rel_pun = rel.relatedness_dist(pair.pun_word);
  const auto rel_alt = rel.relatedness_dist(pair.alt_word);
  KaoTables tables;
  const auto positions = content_positions(sentence, pun_position);
  for (auto i : positions) {
    const auto& w = sentence.word(i);
    tables.unigram.push_back(std::exp(unigram.unigram_logprob(unigram.lookup(w))));
    const TokenId id = rel.vocab().id(w);
    tables.rel_pun.push_back(rel_pun[id]);
    tables.rel_alt.push_back(rel_alt[id]);
  }
  auto post = posterior(tables);
  post.positions = positions;
  return post;
}

double ambiguity(const KaoPosterior& post) {
  const double p = std::clamp(post.p_pun, 0.0, 1.0);
  return entropy_term(p) + entropy_term(1.0 - p);
}

double distinctiveness(const KaoPosterior& post) {
  if (post.f_pun.empty() || post.f_pun.size() != post.f_alt.size()) {
    throw InvalidArgument("distinctiveness needs non-empty assignment vectors of equal length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < post.f_pun.size(); ++i) {
    const double p = std::clamp(post.f_pun[i], kClamp, 1.0 - kClamp);
    const double q = std::clamp(post.f_alt[i], kClamp, 1.0 - kClamp);
    total += bernoulli_kl(p, q) + bernoulli_kl(q, p);
  }
  return total;
}

}  // namespace punforge
