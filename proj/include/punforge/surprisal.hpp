#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "punforge/corpus.hpp"
#include "punforge/ngram_lm.hpp"

namespace punforge {

// (w^p, w^a): the pun word and the alternative word it stands in for.
struct PunPair {
  std::string pun_word;
  std::string alt_word;

  // Throws InvalidArgument if either word is empty or both are equal.
  PunPair(std::string pun, std::string alt);
};

struct PunOccurrence {
  const Sentence* sentence = nullptr;
  std::size_t position = 0;  // 0-based index of the pun word
};

// Locates the pun word; `position` overrides the first-occurrence default.
// Throws InvalidArgument if the pun word is not at that position/absent.
PunOccurrence locate_pun(const Sentence& sentence, const PunPair& pair,
                         std::optional<std::size_t> position = std::nullopt);

struct SurprisalOptions {
  std::size_t window = 2;       // local window d
  bool global_markers = true;   // score the whole sentence with <s>/</s>
};

struct SurprisalReport {
  double s_local = 0.0;
  double s_global = 0.0;
  double s_ratio = -1.0;
  double unusualness = 0.0;
  bool degenerate = false;
};

// ln p(left w^a right) - ln p(left w^p right): positive when the context
// prefers the alternative word.
double surprisal(const LanguageModel& lm, std::span<const std::string> left,
                 std::span<const std::string> right, const PunPair& pair,
                 bool boundary_markers = false);

struct LocalGlobal {
  double s_local = 0.0;
  double s_global = 0.0;
};

LocalGlobal local_global(const LanguageModel& lm, const PunOccurrence& occ, const PunPair& pair,
                         const SurprisalOptions& options = {});

// True when the global surprisal carries no usable signal (zero or non-finite).
bool is_degenerate(double s_local, double s_global);

// -1 when either surprisal is negative or the pair is degenerate.
double s_ratio(double s_local, double s_global);

// -(1/n) [ln p(x) - sum_i ln p(x_i)], sentence scored with boundary markers.
double unusualness(const LanguageModel& lm, std::span<const std::string> words);
double unusualness(const LanguageModel& lm, const Sentence& sentence);

SurprisalReport score(const LanguageModel& lm, const PunOccurrence& occ, const PunPair& pair,
                      const SurprisalOptions& options = {});

}  // namespace punforge
