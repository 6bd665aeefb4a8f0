#include "punforge/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "punforge/errors.hpp"

namespace punforge {

namespace {

constexpr std::string_view kCorpusMagic = "PGC1";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Pronoun: return "PRONOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Other: return "OTHER";
    case PosTag::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (auto t : {PosTag::Noun, PosTag::Pronoun, PosTag::Verb, PosTag::Other, PosTag::Unknown}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

// ---- Vocabulary ------------------------------------------------------------

Vocabulary::Vocabulary() {
  words_.emplace_back(kUnkWord);
  counts_.push_back(0);
  finalize();
}

Vocabulary Vocabulary::build(std::span<const Sentence> sentences, std::uint64_t min_count) {
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) ++freq[t.surface];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  std::uint64_t unk = 0;
  for (auto& [w, c] : freq) {
    if (c < min_count || w == kUnkWord) {
      unk += c;
    } else {
      kept.emplace_back(w, c);
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocabulary v;
  v.counts_[kUnk] = unk;
  for (auto& [w, c] : kept) {
    v.words_.push_back(std::move(w));
    v.counts_.push_back(c);
  }
  v.finalize();
  return v;
}

Vocabulary Vocabulary::from_entries(std::vector<std::pair<std::string, std::uint64_t>> entries) {
  if (entries.empty() || entries.front().first != kUnkWord) {
    throw FormatError("vocabulary must start with " + std::string(kUnkWord));
  }
  Vocabulary v;
  v.words_.clear();
  v.counts_.clear();
  for (auto& [w, c] : entries) {
    v.words_.push_back(std::move(w));
    v.counts_.push_back(c);
  }
  v.finalize();
  if (v.index_.size() != v.words_.size()) throw FormatError("duplicate vocabulary entry");
  return v;
}

void Vocabulary::finalize() {
  index_.clear();
  total_ = 0;
  hash_ = fnv1a("punforge-vocab");
  for (TokenId i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], i);
    total_ += counts_[i];
    hash_ = fnv1a(words_[i], hash_);
    hash_ = fnv1a(std::string_view("\0", 1), hash_);
  }
}

TokenId Vocabulary::id(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it != index_.end() && it->second != kUnk;
}

std::vector<TokenId> Vocabulary::encode(const Sentence& sentence) const {
  std::vector<TokenId> ids;
  ids.reserve(sentence.size());
  for (const auto& t : sentence.tokens) ids.push_back(id(t.surface));
  return ids;
}

std::vector<TokenId> Vocabulary::encode(std::span<const std::string> words) const {
  std::vector<TokenId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(id(w));
  return ids;
}

void Vocabulary::write_dump(std::ostream& out) const {
  for (TokenId i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << i << '\t' << counts_[i] << '\n';
  }
}

std::string Vocabulary::serialize() const {
  BinaryWriter w;
  w.u32(static_cast<std::uint32_t>(words_.size()));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    w.str(words_[i]);
    w.u64(counts_[i]);
  }
  return w.take();
}

Vocabulary Vocabulary::deserialize(std::string_view data) {
  BinaryReader r(data, "vocabulary");
  auto n = r.u32();
  std::vector<std::pair<std::string, std::uint64_t>> entries;
  entries.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto w = r.str();
    auto c = r.u64();
    entries.emplace_back(std::move(w), c);
  }
  return from_entries(std::move(entries));
}

// ---- Tokenization ----------------------------------------------------------

void validate_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto fail = [&](std::size_t at) {
    throw EncodingError("invalid UTF-8 at byte offset " + std::to_string(at));
  };
  while (i < n) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len;
    std::uint32_t cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      fail(i);
    }
    if (i + len > n) fail(i);
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) fail(i + k);
      cp = (cp << 6) | (cc & 0x3F);
    }
    bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                    (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail(i);
    i += len;
  }
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (!is_word_char(c)) {
      out.emplace_back(1, lower(c));
      ++i;
      continue;
    }
    std::string word;
    while (i < n) {
      if (is_word_char(text[i])) {
        word.push_back(lower(text[i]));
        ++i;
      } else if ((text[i] == '\'' || text[i] == '-') && i + 1 < n && is_word_char(text[i + 1])) {
        word.push_back(text[i]);
        ++i;
      } else {
        break;
      }
    }
    out.push_back(std::move(word));
  }
  return out;
}

std::string detokenize(const Sentence& sentence) {
  std::string out;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (i) out.push_back(' ');
    out += sentence.tokens[i].surface;
  }
  return out;
}

std::vector<std::string_view> split_sentences(std::string_view text, bool line_mode) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    if (end > start) out.push_back(text.substr(start, end - start));
    start = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      emit(i);
      start = i + 1;
    } else if (!line_mode && is_terminal(c) &&
               (i + 1 == text.size() || is_space(text[i + 1]))) {
      emit(i + 1);
    }
  }
  emit(text.size());
  return out;
}

Corpus ingest_text(std::string_view text, const IngestOptions& options) {
  validate_utf8(text);
  Corpus corpus;
  for (auto piece : split_sentences(text, options.line_mode)) {
    auto words = tokenize(piece);
    if (words.empty()) continue;
    Sentence s;
    s.id = static_cast<std::uint32_t>(corpus.sentences.size());
    s.tokens.reserve(words.size());
    for (auto& w : words) s.tokens.push_back(Token{std::move(w), PosTag::Unknown});
    corpus.sentences.push_back(std::move(s));
  }
  corpus.vocab = Vocabulary::build(corpus.sentences, options.min_count);
  return corpus;
}

Corpus ingest(std::istream& in, const IngestOptions& options) {
  return ingest_text(slurp(in), options);
}

Corpus ingest_pretagged(std::istream& in, const IngestOptions& options) {
  auto text = slurp(in);
  validate_utf8(text);
  Corpus corpus;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string item;
    Sentence s;
    while (fields >> item) {
      auto us = item.rfind('_');
      if (us == std::string::npos || us == 0) {
        throw FormatError("pre-tagged input line " + std::to_string(lineno) +
                          ": expected surface_TAG, got '" + item + "'");
      }
      auto tag = parse_pos_tag(std::string_view(item).substr(us + 1));
      if (!tag) {
        throw FormatError("pre-tagged input line " + std::to_string(lineno) +
                          ": unknown tag in '" + item + "'");
      }
      std::string surface = item.substr(0, us);
      std::transform(surface.begin(), surface.end(), surface.begin(), lower);
      s.tokens.push_back(Token{std::move(surface), *tag});
    }
    if (s.tokens.empty()) continue;
    s.id = static_cast<std::uint32_t>(corpus.sentences.size());
    corpus.sentences.push_back(std::move(s));
  }
  corpus.vocab = Vocabulary::build(corpus.sentences, options.min_count);
  return corpus;
}

// ---- Tagging ---------------------------------------------------------------

TagLexicon::TagLexicon(std::unordered_set<std::string> nouns,
                       std::unordered_set<std::string> verbs)
    : nouns_(std::move(nouns)), verbs_(std::move(verbs)) {}

const std::vector<std::string_view>& TagLexicon::pronouns() {
  static const std::vector<std::string_view> list = {
      "i",       "you",      "he",      "she",     "it",         "we",
      "they",    "me",       "him",     "her",     "us",         "them",
      "myself",  "yourself", "himself", "herself", "itself",     "ourselves",
      "themselves", "someone", "anyone", "everyone", "nobody"};
  return list;
}

const std::vector<std::string_view>& TagLexicon::stopwords() {
  static const std::vector<std::string_view> list = {
      "the",  "a",    "an",   "and",  "or",    "but",   "if",   "of",   "to",   "in",
      "on",   "at",   "by",   "for",  "with",  "from",  "as",   "is",   "am",   "are",
      "was",  "were", "be",   "been", "this",  "that",  "these", "those", "my",  "your",
      "his",  "her",  "its",  "our",  "their", "not",   "no",   "so",   "than", "too",
      "very", "can",  "will", "just", "do",    "does",  "did",  "have", "has",  "had"};
  return list;
}

bool TagLexicon::is_pronoun(std::string_view word) {
  const auto& p = pronouns();
  return std::find(p.begin(), p.end(), word) != p.end();
}

bool TagLexicon::is_stopword(std::string_view word) {
  const auto& s = stopwords();
  return std::find(s.begin(), s.end(), word) != s.end();
}

bool TagLexicon::is_punctuation(std::string_view word) {
  return !word.empty() && std::none_of(word.begin(), word.end(), is_word_char);
}

bool TagLexicon::is_noun(std::string_view word) const {
  return nouns_.count(std::string(word)) > 0;
}

bool TagLexicon::is_verb(std::string_view word) const {
  return verbs_.count(std::string(word)) > 0;
}

PosTag TagLexicon::lookup(std::string_view word) const {
  if (is_pronoun(word)) return PosTag::Pronoun;
  if (is_stopword(word) || is_punctuation(word)) return PosTag::Other;
  if (!has_open_class()) return PosTag::Unknown;
  if (is_noun(word)) return PosTag::Noun;
  if (is_verb(word)) return PosTag::Verb;
  return PosTag::Other;
}

Sentence tag(Sentence sentence, const TagLexicon& lexicon) {
  for (auto& t : sentence.tokens) t.pos = lexicon.lookup(t.surface);
  return sentence;
}

void resolve_unknown_tags(std::vector<Sentence>& sentences, const TagLexicon& lexicon) {
  for (auto& s : sentences) {
    for (auto& t : s.tokens) {
      if (t.pos == PosTag::Unknown) t.pos = lexicon.lookup(t.surface);
    }
  }
}

// ---- Persistence -----------------------------------------------------------

void save_corpus(const std::filesystem::path& path, const Corpus& corpus,
                 const Sections& extra) {
  Sections sections = extra;
  sections["VOCB"] = corpus.vocab.serialize();
  BinaryWriter w;
  w.u32(static_cast<std::uint32_t>(corpus.sentences.size()));
  for (const auto& s : corpus.sentences) {
    w.u32(s.id);
    w.u32(static_cast<std::uint32_t>(s.size()));
    for (const auto& t : s.tokens) {
      w.str(t.surface);
      w.u8(static_cast<std::uint8_t>(t.pos));
    }
  }
  sections["SENT"] = w.take();
  write_file(path, write_container(kCorpusMagic, sections));
}

LoadedCorpus load_corpus(const std::filesystem::path& path) {
  auto data = read_file(path);
  auto sections = read_container(data, kCorpusMagic, path.string());
  auto vit = sections.find("VOCB");
  auto sit = sections.find("SENT");
  if (vit == sections.end() || sit == sections.end()) {
    throw FormatError(path.string() + ": missing VOCB or SENT section");
  }
  LoadedCorpus out;
  out.corpus.vocab = Vocabulary::deserialize(vit->second);
  BinaryReader r(sit->second, path.string() + " SENT");
  auto n = r.u32();
  out.corpus.sentences.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    Sentence s;
    s.id = r.u32();
    auto len = r.u32();
    s.tokens.reserve(len);
    for (std::uint32_t k = 0; k < len; ++k) {
      Token t;
      t.surface = r.str();
      auto pos = r.u8();
      if (pos > static_cast<std::uint8_t>(PosTag::Unknown)) r.fail("bad POS tag");
      t.pos = static_cast<PosTag>(pos);
      s.tokens.push_back(std::move(t));
    }
    out.corpus.sentences.push_back(std::move(s));
  }
  sections.erase("VOCB");
  sections.erase("SENT");
  out.extra = std::move(sections);
  return out;
}

bool is_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in.gcount() == 4 && std::string_view(magic, 4) == kCorpusMagic;
}

}  // namespace punforge
