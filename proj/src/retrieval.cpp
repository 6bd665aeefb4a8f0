#include "punforge/retrieval.hpp"

#include <algorithm>

#include "punforge/binary_io.hpp"
#include "punforge/errors.hpp"

namespace punforge {

InvertedIndex InvertedIndex::build(std::span<const Sentence> sentences, const Vocabulary& vocab) {
  InvertedIndex index;
  index.vocab_hash_ = vocab.hash();
  index.postings_.resize(vocab.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const auto ids = vocab.encode(sentences[s]);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      auto& list = index.postings_[ids[i]];
      if (list.empty() || list.back().sentence != s) {
        list.push_back(Posting{static_cast<std::uint32_t>(s), {}});
      }
      list.back().positions.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return index;
}

std::span<const Posting> InvertedIndex::postings(TokenId id) const {
  if (id >= postings_.size()) return {};
  return postings_[id];
}

std::span<const Posting> InvertedIndex::postings(std::string_view word,
                                                 const Vocabulary& vocab) const {
  if (!vocab.contains(word)) return {};
  return postings(vocab.id(word));
}

std::string InvertedIndex::serialize() const {
  BinaryWriter w;
  w.u64(vocab_hash_);
  w.u32(static_cast<std::uint32_t>(postings_.size()));
  for (const auto& list : postings_) {
    w.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& p : list) {
      w.u32(p.sentence);
      w.u32(static_cast<std::uint32_t>(p.positions.size()));
      for (auto pos : p.positions) w.u32(pos);
    }
  }
  return w.take();
}

InvertedIndex InvertedIndex::deserialize(std::string_view data, const Vocabulary& vocab) {
  BinaryReader r(data, "PGIX");
  InvertedIndex index;
  index.vocab_hash_ = r.u64();
  if (index.vocab_hash_ != vocab.hash()) throw FormatError("PGIX: vocabulary hash mismatch");
  const auto n = r.u32();
  if (n != vocab.size()) r.fail("posting table size does not match the vocabulary");
  index.postings_.resize(n);
  for (auto& list : index.postings_) {
    const auto count = r.u32();
    list.resize(count);
    for (auto& p : list) {
      p.sentence = r.u32();
      const auto k = r.u32();
      p.positions.resize(k);
      for (auto& pos : p.positions) pos = r.u32();
    }
  }
  return index;
}

bool seed_ranks_before(const SeedCandidate& a, const SeedCandidate& b, bool absolute_position) {
  const auto la = a.sentence->size();
  const auto lb = b.sentence->size();
  if (absolute_position) {
    if (a.alt_position != b.alt_position) return a.alt_position > b.alt_position;
  } else {
    // a.pos / la > b.pos / lb without floating point.
    const auto lhs = a.alt_position * lb;
    const auto rhs = b.alt_position * la;
    if (lhs != rhs) return lhs > rhs;
  }
  if (la != lb) return la < lb;
  return a.sentence->id < b.sentence->id;
}

std::vector<SeedCandidate> retrieve_seeds(const InvertedIndex& index,
                                          std::span<const Sentence> sentences,
                                          const Vocabulary& vocab, std::string_view alt_word,
                                          const RetrievalOptions& options) {
  if (options.keep < 1 || options.pool < options.keep) {
    throw InvalidArgument("retrieval needs pool >= keep >= 1");
  }
  std::vector<SeedCandidate> out;
  for (const auto& posting : index.postings(alt_word, vocab)) {
    if (out.size() >= options.pool) break;
    if (posting.positions.size() != 1) continue;
    if (posting.sentence >= sentences.size()) throw FormatError("index does not match the corpus");
    const auto& s = sentences[posting.sentence];
    if (s.size() < options.min_length || s.size() > options.max_length) continue;
    out.push_back(SeedCandidate{&s, posting.positions.front(), 0});
  }
  std::sort(out.begin(), out.end(), [&](const SeedCandidate& a, const SeedCandidate& b) {
    return seed_ranks_before(a, b, options.absolute_position);
  });
  if (out.size() > options.keep) out.resize(options.keep);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i;
  return out;
}

}  // namespace punforge
