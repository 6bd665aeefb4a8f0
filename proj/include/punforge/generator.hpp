#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "punforge/corpus.hpp"
#include "punforge/ngram_lm.hpp"
#include "punforge/retrieval.hpp"
#include "punforge/skipgram.hpp"
#include "punforge/surprisal.hpp"
#include "punforge/wordnet.hpp"

namespace punforge {

enum class Stage { Swap, SwapTopic };
std::string_view to_string(Stage stage);

struct TopicWord {
  std::string word;
  double score = 0.0;  // skip-gram probability given the pun word
};

struct GenerationCandidate {
  std::string pun_word;
  std::string alt_word;
  std::uint32_t seed_id = 0;
  std::size_t seed_rank = 0;
  std::size_t pun_position = 0;
  std::optional<std::size_t> deleted_position;
  std::optional<Token> deleted_word;
  std::optional<TopicWord> topic_word;
  std::vector<Token> final_tokens;
  Stage stage = Stage::Swap;
  std::optional<SurprisalReport> scores;
  std::vector<std::string> warnings;

  Sentence as_sentence() const;
  std::string text() const;
};

// Replaces the seed's single alternative-word occurrence with the pun word.
// Throws InvalidArgument when the alternative word is not at the seed position.
GenerationCandidate swap(const SeedCandidate& seed, const PunPair& pair);

// Leftmost NOUN or PRONOUN strictly before the pun word.
std::optional<std::size_t> select_deletion(const GenerationCandidate& candidate);

// One SWAP+TOPIC candidate per prediction that the lexicon tags NOUN and that
// is type-consistent with the deleted word, in the given (score) order.
std::vector<GenerationCandidate> topic_insert(
    const GenerationCandidate& candidate,
    std::span<const std::pair<std::string, double>> predictions, const SynsetGraph& wordnet,
    const TagLexicon& lexicon, double threshold);

std::vector<GenerationCandidate> topic_insert(const GenerationCandidate& candidate,
                                              const SkipGramModel& skipgram,
                                              const SynsetGraph& wordnet,
                                              const TagLexicon& lexicon, std::size_t k,
                                              double threshold);

struct GeneratorConfig {
  RetrievalOptions retrieval;
  std::size_t topic_k = 100;
  double threshold = 0.3;
  std::size_t max_outputs = 10;
  bool topic_stage = true;       // false: Retrieve+Swap only
  bool rerank_surprisal = false;
  SurprisalOptions surprisal;
};

struct GenerationResources {
  std::span<const Sentence> sentences;
  const Vocabulary* vocab = nullptr;
  const InvertedIndex* index = nullptr;
  const LanguageModel* lm = nullptr;
  const SkipGramModel* skipgram = nullptr;
  const SynsetGraph* wordnet = nullptr;
  const TagLexicon* lexicon = nullptr;
};

enum class FailureReason { NoSeeds, NoDeletionSlot, NoTopicWords };
std::string_view to_string(FailureReason reason);

struct GenerationResult {
  std::vector<GenerationCandidate> candidates;
  std::optional<FailureReason> failure;
  std::vector<std::string> warnings;
};

// retrieve -> swap -> topic insertion, ordered by (seed rank, topic score);
// optionally re-ranked by S_ratio after truncation to max_outputs.
GenerationResult generate(const PunPair& pair, const GenerationResources& resources,
                          const GeneratorConfig& config = {});

}  // namespace punforge
