#pragma once

#include <cstddef>
#include <vector>

#include "punforge/corpus.hpp"
#include "punforge/ngram_lm.hpp"
#include "punforge/skipgram.hpp"
#include "punforge/surprisal.hpp"

namespace punforge {

// Per content position i: p_unigram(x_i), p_rel(x_i | w^p), p_rel(x_i | w^a).
struct KaoTables {
  std::vector<double> unigram;
  std::vector<double> rel_pun;
  std::vector<double> rel_alt;
};

struct KaoPosterior {
  double p_pun = 0.5;           // P(z = w^p | x)
  std::vector<double> f_pun;    // P(f_i = 1 | z = w^p, x)
  std::vector<double> f_alt;    // P(f_i = 1 | z = w^a, x)
  std::vector<std::size_t> positions;  // sentence index of each entry
};

// Tokens that enter the model: everything except punctuation, stopwords and
// the pun word position itself.
std::vector<std::size_t> content_positions(const Sentence& sentence, std::size_t pun_position);

// Generative model with P(z) = P(f_i = 1) = 1/2 and
//   m(x_i | z) = 1/2 p_unigram(x_i) + 1/2 p_rel(x_i | z).
KaoPosterior posterior(const KaoTables& tables);

// Unigram probabilities from the language model, relatedness from the
// skip-gram softmax. Throws TopicLookupError when a pair word has no embedding.
KaoPosterior posterior(const LanguageModel& unigram, const SkipGramModel& rel,
                       const Sentence& sentence, const PunPair& pair, std::size_t pun_position);

// Entropy of P(z | x) in nats.
double ambiguity(const KaoPosterior& post);

// Symmetrized KL between the two factorized assignment posteriors, summed
// over positions. Parameters are clamped to [1e-9, 1 - 1e-9].
double distinctiveness(const KaoPosterior& post);

}  // namespace punforge
