#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "punforge/corpus.hpp"

namespace punforge {

enum class WordNetPos : std::uint8_t { Noun, Verb };

using SynsetId = std::size_t;

struct Synset {
  std::uint32_t offset = 0;
  WordNetPos pos = WordNetPos::Noun;
  std::vector<std::string> lemmas;
  std::vector<SynsetId> hypernyms;
};

// Input for building a graph directly, e.g. synthetic hierarchies in tests.
struct SynsetSpec {
  WordNetPos pos = WordNetPos::Noun;
  std::vector<std::string> lemmas;
  std::vector<SynsetId> hypernyms;
};

// Noun and verb hypernym graphs with a lemma index. Immutable once built.
//
// Path similarity is 1 / (1 + d) with d the shortest undirected path length
// over hypernym edges. A virtual root per part of speech links every synset
// without hypernyms, so any two same-POS synsets are connected.
class SynsetGraph {
 public:
  // Reads index.{noun,verb} and data.{noun,verb}. Throws FormatError with
  // file and line on malformed input.
  static SynsetGraph load(const std::filesystem::path& dict_dir);
  static SynsetGraph build(std::vector<SynsetSpec> specs, std::string version = "synthetic");

  std::size_t size() const { return synsets_.size(); }
  const Synset& synset(SynsetId id) const { return synsets_.at(id); }
  const std::string& version() const { return version_; }

  // Case-insensitive; spaces in multiword lemmas may be given as underscores.
  std::vector<SynsetId> synsets_of(std::string_view lemma, WordNetPos pos) const;
  // NOUN/VERB look up the matching graph, PRONOUN maps to person.n.01,
  // anything else has no synsets.
  std::vector<SynsetId> synsets_of(std::string_view lemma, PosTag tag) const;

  // "lemma.n.NN" naming: first lemma of the synset and its sense rank.
  std::string name(SynsetId id) const;
  std::optional<SynsetId> find(std::string_view name) const;
  std::optional<SynsetId> person() const { return person_; }

  // Shortest undirected distance, or nullopt when it exceeds max_depth.
  std::optional<std::size_t> distance(SynsetId a, SynsetId b,
                                      std::size_t max_depth = SIZE_MAX) const;
  // Throws InvalidArgument for a cross-POS pair.
  double path_similarity(SynsetId a, SynsetId b) const;

  // True iff some pair of senses has path similarity strictly above the
  // threshold. Words without synsets are never consistent.
  bool type_consistent(const Token& a, const Token& b, double threshold) const;

  // Lemma membership of the noun and verb indexes, for tagging.
  TagLexicon lexicon() const;

 private:
  SynsetGraph() = default;
  void finalize();
  std::size_t root(WordNetPos pos) const { return synsets_.size() + static_cast<std::size_t>(pos); }
  template <typename F>
  void for_each_neighbor(std::size_t node, F&& f) const;

  std::vector<Synset> synsets_;
  std::vector<std::vector<SynsetId>> hyponyms_;
  std::array<std::vector<SynsetId>, 2> tops_;
  std::array<std::unordered_map<std::string, std::vector<SynsetId>>, 2> lemma_index_;
  std::optional<SynsetId> person_;
  std::string version_;
};

// Reads the WordNet directory from $PUNGEN_WORDNET, if set.
std::optional<std::filesystem::path> wordnet_dir_from_env();

}  // namespace punforge
