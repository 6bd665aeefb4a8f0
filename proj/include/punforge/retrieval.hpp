#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "punforge/corpus.hpp"

namespace punforge {

struct Posting {
  std::uint32_t sentence = 0;             // index into the indexed sentence list
  std::vector<std::uint32_t> positions;   // ascending

  bool operator==(const Posting&) const = default;
};

class InvertedIndex {
 public:
  static InvertedIndex build(std::span<const Sentence> sentences, const Vocabulary& vocab);

  // Empty for ids without occurrences.
  std::span<const Posting> postings(TokenId id) const;
  // Empty for out-of-vocabulary words (they all share <unk>).
  std::span<const Posting> postings(std::string_view word, const Vocabulary& vocab) const;

  std::uint64_t vocab_hash() const { return vocab_hash_; }

  // Payload of the PGIX section of a corpus container.
  std::string serialize() const;
  static InvertedIndex deserialize(std::string_view data, const Vocabulary& vocab);

 private:
  std::vector<std::vector<Posting>> postings_;
  std::uint64_t vocab_hash_ = 0;
};

struct RetrievalOptions {
  std::size_t pool = 500;
  std::size_t keep = 100;
  std::size_t min_length = 4;
  std::size_t max_length = 40;
  bool absolute_position = false;  // rank by index instead of index / length
};

struct SeedCandidate {
  const Sentence* sentence = nullptr;
  std::size_t alt_position = 0;
  std::size_t rank = 0;  // 0-based position in the returned list
};

// Later alternative word first (relative or absolute), then shorter
// sentence, then lower sentence id.
bool seed_ranks_before(const SeedCandidate& a, const SeedCandidate& b, bool absolute_position);

// Sentences with exactly one occurrence of `alt_word` and a length inside
// the bounds, gathered in corpus order up to `pool`, ranked, truncated to
// `keep`.
std::vector<SeedCandidate> retrieve_seeds(const InvertedIndex& index,
                                          std::span<const Sentence> sentences,
                                          const Vocabulary& vocab, std::string_view alt_word,
                                          const RetrievalOptions& options = {});

}  // namespace punforge
