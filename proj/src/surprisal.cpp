#include "punforge/surprisal.hpp"

#include <algorithm>
#include <cmath>

#include "punforge/errors.hpp"

namespace punforge {

namespace {

constexpr double kDegenerateGlobal = 1e-9;

std::vector<TokenId> with_word(const LanguageModel& lm, std::span<const std::string> left,
                               const std::string& word, std::span<const std::string> right) {
  std::vector<TokenId> ids;
  ids.reserve(left.size() + right.size() + 1);
  for (const auto& w : left) ids.push_back(lm.lookup(w));
  ids.push_back(lm.lookup(word));
  for (const auto& w : right) ids.push_back(lm.lookup(w));
  return ids;
}

std::vector<std::string> words_of(const Sentence& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (const auto& t : s.tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

PunPair::PunPair(std::string pun, std::string alt)
    : pun_word(std::move(pun)), alt_word(std::move(alt)) {
  if (pun_word.empty() || alt_word.empty()) throw InvalidArgument("pun pair words must be non-empty");
  if (pun_word == alt_word) throw InvalidArgument("pun word and alternative word must differ");
}

PunOccurrence locate_pun(const Sentence& sentence, const PunPair& pair,
                         std::optional<std::size_t> position) {
  if (position) {
    if (*position >= sentence.size() || sentence.word(*position) != pair.pun_word) {
      throw InvalidArgument("pun word '" + pair.pun_word + "' is not at position " +
                            std::to_string(*position));
    }
    return {&sentence, *position};
  }
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (sentence.word(i) == pair.pun_word) return {&sentence, i};
  }
  throw InvalidArgument("pun word '" + pair.pun_word + "' does not occur in the sentence");
}

double surprisal(const LanguageModel& lm, std::span<const std::string> left,
                 std::span<const std::string> right, const PunPair& pair,
                 bool boundary_markers) {
  const auto alt = with_word(lm, left, pair.alt_word, right);
  const auto pun = with_word(lm, left, pair.pun_word, right);
  return logprob_seq(lm, alt, boundary_markers) - logprob_seq(lm, pun, boundary_markers);
}

LocalGlobal local_global(const LanguageModel& lm, const PunOccurrence& occ, const PunPair& pair,
                         const SurprisalOptions& options) {
  if (options.window < 1) throw InvalidArgument("local window must be >= 1");
  const auto words = words_of(*occ.sentence);
  const std::size_t p = occ.position;
  const std::size_t n = words.size();
  const std::span<const std::string> all(words);

  const std::size_t lo = p >= options.window ? p - options.window : 0;
  const std::size_t hi = std::min(n, p + 1 + options.window);

  LocalGlobal out;
  out.s_local = surprisal(lm, all.subspan(lo, p - lo), all.subspan(p + 1, hi - p - 1), pair, false);
  out.s_global = surprisal(lm, all.first(p), all.subspan(p + 1), pair, options.global_markers);
  return out;
}

bool is_degenerate(double s_local, double s_global) {
  if (!std::isfinite(s_local) || !std::isfinite(s_global)) return true;
  if (s_global >= 0.0 && s_global < kDegenerateGlobal) return true;
  return !std::isfinite(s_local / s_global);
}

double s_ratio(double s_local, double s_global) {
  if (std::isnan(s_local) || std::isnan(s_global)) return -1.0;
  if (s_local < 0.0 || s_global < 0.0) return -1.0;
  if (is_degenerate(s_local, s_global)) return -1.0;
  return s_local / s_global;
}

double unusualness(const LanguageModel& lm, std::span<const std::string> words) {
  if (words.empty()) throw InvalidArgument("unusualness of an empty sentence");
  std::vector<TokenId> ids;
  ids.reserve(words.size());
  double unigrams = 0.0;
  for (const auto& w : words) {
    ids.push_back(lm.lookup(w));
    unigrams += lm.unigram_logprob(ids.back());
  }
  const double joint = logprob_seq(lm, ids, true);
  return -(joint - unigrams) / static_cast<double>(words.size());
}

double unusualness(const LanguageModel& lm, const Sentence& sentence) {
  const auto words = words_of(sentence);
  return unusualness(lm, words);
}

SurprisalReport score(const LanguageModel& lm, const PunOccurrence& occ, const PunPair& pair,
                      const SurprisalOptions& options) {
  SurprisalReport r;
  const auto lg = local_global(lm, occ, pair, options);
  r.s_local = lg.s_local;
  r.s_global = lg.s_global;
  r.degenerate = is_degenerate(r.s_local, r.s_global);
  r.s_ratio = s_ratio(r.s_local, r.s_global);
  r.unusualness = unusualness(lm, *occ.sentence);
  return r;
}

}  // namespace punforge
