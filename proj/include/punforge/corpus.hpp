#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "punforge/binary_io.hpp"

namespace punforge {

using TokenId = std::uint32_t;

enum class PosTag : std::uint8_t { Noun, Pronoun, Verb, Other, Unknown };

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

struct Token {
  std::string surface;  // lowercase, non-empty, no whitespace
  PosTag pos = PosTag::Unknown;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::uint32_t id = 0;
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
  const std::string& word(std::size_t i) const { return tokens[i].surface; }
};

// Word <-> id map with corpus frequencies. Id 0 is reserved for <unk>; the
// remaining ids are assigned by descending frequency, then lexicographically.
class Vocabulary {
 public:
  static constexpr TokenId kUnk = 0;
  static constexpr std::string_view kUnkWord = "<unk>";

  Vocabulary();

  static Vocabulary build(std::span<const Sentence> sentences, std::uint64_t min_count);
  // Restores a vocabulary from (word, count) pairs in id order, UNK first.
  static Vocabulary from_entries(std::vector<std::pair<std::string, std::uint64_t>> entries);

  TokenId id(std::string_view word) const;
  bool contains(std::string_view word) const;
  const std::string& word(TokenId id) const { return words_.at(id); }
  std::uint64_t count(TokenId id) const { return counts_.at(id); }
  std::size_t size() const { return words_.size(); }
  std::uint64_t total_count() const { return total_; }
  // Fingerprint of the id assignment; models refuse to load against another.
  std::uint64_t hash() const { return hash_; }

  std::vector<TokenId> encode(const Sentence& sentence) const;
  std::vector<TokenId> encode(std::span<const std::string> words) const;

  // "word<TAB>id<TAB>count" per line, in id order.
  void write_dump(std::ostream& out) const;

  std::string serialize() const;
  static Vocabulary deserialize(std::string_view data);

 private:
  void finalize();

  std::vector<std::string> words_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, TokenId> index_;
  std::uint64_t total_ = 0;
  std::uint64_t hash_ = 0;
};

struct Corpus {
  std::vector<Sentence> sentences;
  Vocabulary vocab;
};

struct IngestOptions {
  std::uint64_t min_count = 1;
  // Split only on newlines instead of also on terminal punctuation.
  bool line_mode = false;
};

// Throws EncodingError on malformed UTF-8.
void validate_utf8(std::string_view text);

// Splits one sentence worth of text into lowercase tokens. Punctuation other
// than word-internal apostrophes and hyphens becomes its own token.
std::vector<std::string> tokenize(std::string_view text);
std::string detokenize(const Sentence& sentence);

std::vector<std::string_view> split_sentences(std::string_view text, bool line_mode);

Corpus ingest(std::istream& in, const IngestOptions& options = {});
Corpus ingest_text(std::string_view text, const IngestOptions& options = {});
// One sentence per line, tokens written as surface_TAG.
Corpus ingest_pretagged(std::istream& in, const IngestOptions& options = {});

// Closed pronoun list plus noun/verb lemma membership. Open-class sets come
// from a WordNet index (see wordnet.hpp); without them, words that are not
// pronouns, stopwords or punctuation stay UNKNOWN.
class TagLexicon {
 public:
  TagLexicon() = default;
  TagLexicon(std::unordered_set<std::string> nouns, std::unordered_set<std::string> verbs);

  static const std::vector<std::string_view>& pronouns();
  static const std::vector<std::string_view>& stopwords();
  static bool is_pronoun(std::string_view word);
  static bool is_stopword(std::string_view word);
  static bool is_punctuation(std::string_view word);

  bool has_open_class() const { return !nouns_.empty() || !verbs_.empty(); }
  bool is_noun(std::string_view word) const;
  bool is_verb(std::string_view word) const;
  PosTag lookup(std::string_view word) const;

 private:
  std::unordered_set<std::string> nouns_;
  std::unordered_set<std::string> verbs_;
};

Sentence tag(Sentence sentence, const TagLexicon& lexicon);
// Retags only tokens still marked UNKNOWN.
void resolve_unknown_tags(std::vector<Sentence>& sentences, const TagLexicon& lexicon);

// Binary container with magic PGC1; extra sections (e.g. the PGIX index) are
// carried through untouched.
void save_corpus(const std::filesystem::path& path, const Corpus& corpus,
                 const Sections& extra = {});
struct LoadedCorpus {
  Corpus corpus;
  Sections extra;
};
LoadedCorpus load_corpus(const std::filesystem::path& path);
bool is_corpus_file(const std::filesystem::path& path);

}  // namespace punforge
