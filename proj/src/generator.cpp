#include "punforge/generator.hpp"

#include <algorithm>

#include "punforge/errors.hpp"

namespace punforge {

std::string_view to_string(Stage stage) {
  return stage == Stage::Swap ? "SWAP" : "SWAP+TOPIC";
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::NoSeeds: return "NO_SEEDS";
    case FailureReason::NoDeletionSlot: return "NO_DELETION_SLOT";
    case FailureReason::NoTopicWords: return "NO_TOPIC_WORDS";
  }
  return "UNKNOWN";
}

Sentence GenerationCandidate::as_sentence() const {
  return Sentence{seed_id, final_tokens};
}

std::string GenerationCandidate::text() const { return detokenize(as_sentence()); }

GenerationCandidate swap(const SeedCandidate& seed, const PunPair& pair) {
  const auto& s = *seed.sentence;
  if (seed.alt_position >= s.size() || s.word(seed.alt_position) != pair.alt_word) {
    throw InvalidArgument("seed has no '" + pair.alt_word + "' at position " +
                          std::to_string(seed.alt_position));
  }
  GenerationCandidate c;
  c.pun_word = pair.pun_word;
  c.alt_word = pair.alt_word;
  c.seed_id = s.id;
  c.seed_rank = seed.rank;
  c.pun_position = seed.alt_position;
  c.final_tokens = s.tokens;
  c.final_tokens[seed.alt_position].surface = pair.pun_word;
  c.stage = Stage::Swap;
  return c;
}

std::optional<std::size_t> select_deletion(const GenerationCandidate& candidate) {
  for (std::size_t i = 0; i < candidate.pun_position && i < candidate.final_tokens.size(); ++i) {
    const auto pos = candidate.final_tokens[i].pos;
    if (pos == PosTag::Noun || pos == PosTag::Pronoun) return i;
  }
  return std::nullopt;
}

std::vector<GenerationCandidate> topic_insert(
    const GenerationCandidate& candidate,
    std::span<const std::pair<std::string, double>> predictions, const SynsetGraph& wordnet,
    const TagLexicon& lexicon, double threshold) {
  std::vector<GenerationCandidate> out;
  if (candidate.stage != Stage::Swap) return out;
  const auto slot = select_deletion(candidate);
  if (!slot) return out;
  const Token& deleted = candidate.final_tokens[*slot];
  for (const auto& [word, score] : predictions) {
    if (word == candidate.pun_word || word == candidate.alt_word || word == deleted.surface) {
      continue;
    }
    if (lexicon.lookup(word) != PosTag::Noun) continue;
    const Token topic{word, PosTag::Noun};
    if (!wordnet.type_consistent(topic, deleted, threshold)) continue;
    GenerationCandidate c = candidate;
    c.stage = Stage::SwapTopic;
    c.deleted_position = *slot;
    c.deleted_word = deleted;
    c.topic_word = TopicWord{word, score};
    c.final_tokens[*slot] = topic;
    c.scores.reset();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<GenerationCandidate> topic_insert(const GenerationCandidate& candidate,
                                              const SkipGramModel& skipgram,
                                              const SynsetGraph& wordnet,
                                              const TagLexicon& lexicon, std::size_t k,
                                              double threshold) {
  std::vector<std::pair<std::string, double>> predictions;
  try {
    predictions = skipgram.predict_topics(candidate.pun_word, k);
  } catch (const TopicLookupError&) {
    return {};
  }
  return topic_insert(candidate, predictions, wordnet, lexicon, threshold);
}

GenerationResult generate(const PunPair& pair, const GenerationResources& res,
                          const GeneratorConfig& config) {
  if (!res.vocab || !res.index || !res.lm || !res.lexicon) {
    throw InvalidArgument("generation needs a vocabulary, index, language model and lexicon");
  }
  if (config.topic_stage && (!res.skipgram || !res.wordnet)) {
    throw InvalidArgument("topic insertion needs a skip-gram model and WordNet");
  }
  if (res.index->vocab_hash() != res.vocab->hash() ||
      (res.skipgram && res.skipgram->vocab().hash() != res.vocab->hash())) {
    throw FormatError("resources were built from different vocabularies");
  }

  GenerationResult result;
  const auto pun_tag = res.lexicon->lookup(pair.pun_word);
  const auto alt_tag = res.lexicon->lookup(pair.alt_word);
  if (pun_tag != alt_tag) {
    result.warnings.push_back("POS_MISMATCH: " + pair.pun_word + "/" + std::string(to_string(pun_tag)) +
                              " vs " + pair.alt_word + "/" + std::string(to_string(alt_tag)));
  }

  auto seeds = retrieve_seeds(*res.index, res.sentences, *res.vocab, pair.alt_word, config.retrieval);
  // A seed that already contains the pun word would end up with two.
  std::erase_if(seeds, [&](const SeedCandidate& s) {
    return std::any_of(s.sentence->tokens.begin(), s.sentence->tokens.end(),
                       [&](const Token& t) { return t.surface == pair.pun_word; });
  });
  if (seeds.empty()) {
    result.failure = FailureReason::NoSeeds;
    return result;
  }

  std::vector<std::pair<std::string, double>> predictions;
  bool have_predictions = false;
  if (config.topic_stage) {
    try {
      predictions = res.skipgram->predict_topics(pair.pun_word, config.topic_k);
      have_predictions = true;
    } catch (const TopicLookupError&) {
      result.failure = FailureReason::NoTopicWords;
      return result;
    }
  }

  bool any_slot = false;
  auto& out = result.candidates;
  for (const auto& seed : seeds) {
    if (out.size() >= config.max_outputs) break;
    auto swapped = swap(seed, pair);
    if (!config.topic_stage) {
      out.push_back(std::move(swapped));
      continue;
    }
    if (select_deletion(swapped)) any_slot = true;
    if (!have_predictions) continue;
    for (auto& c : topic_insert(swapped, predictions, *res.wordnet, *res.lexicon, config.threshold)) {
      if (out.size() >= config.max_outputs) break;
      out.push_back(std::move(c));
    }
  }

  for (auto& c : out) {
    const auto sentence = c.as_sentence();
    const PunOccurrence occ{&sentence, c.pun_position};
    c.scores = score(*res.lm, occ, pair, config.surprisal);
    c.warnings = result.warnings;
  }
  if (config.rerank_surprisal) {
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.scores->s_ratio > b.scores->s_ratio;
    });
  }
  if (out.empty()) {
    result.failure = any_slot ? FailureReason::NoTopicWords : FailureReason::NoDeletionSlot;
  }
  return result;
}

}  // namespace punforge
