#include "punforge/wordnet.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <regex>
#include <sstream>

#include "punforge/errors.hpp"

namespace punforge {

namespace {

constexpr std::array<const char*, 2> kPosSuffix = {"noun", "verb"};
constexpr std::array<char, 2> kPosLetter = {'n', 'v'};

std::string normalize_lemma(std::string_view lemma) {
  std::string out(lemma);
  for (auto& c : out) {
    if (c == ' ') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& file, std::size_t line,
                             const std::string& msg) {
  throw FormatError(file.string() + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) {
    if (f == "|") break;
    out.push_back(std::move(f));
  }
  return out;
}

std::uint32_t parse_number(const std::string& s, int base, const std::filesystem::path& file,
                           std::size_t line) {
  try {
    std::size_t used = 0;
    auto v = std::stoul(s, &used, base);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    parse_fail(file, line, "expected a number, got '" + s + "'");
  }
}

struct RawSynset {
  std::uint32_t offset;
  std::vector<std::string> lemmas;
  std::vector<std::uint32_t> hypernym_offsets;
};

std::string scan_version(const std::string& header, const std::string& current) {
  static const std::regex wn(R"(WordNet (\d+\.\d+))");
  static const std::regex ver(R"(Version:\s*(\S+))");
  std::smatch m;
  if (std::regex_search(header, m, wn)) return "WordNet " + m[1].str();
  if (current.empty() && std::regex_search(header, m, ver)) return m[1].str();
  return current;
}

std::vector<RawSynset> read_data_file(const std::filesystem::path& file, char pos_letter,
                                      std::string& version) {
  std::ifstream in(file);
  if (!in) throw FormatError("cannot open WordNet file " + file.string());
  std::vector<RawSynset> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == ' ') {
      version = scan_version(line, version);
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() < 4) parse_fail(file, lineno, "truncated synset record");
    RawSynset s;
    s.offset = parse_number(f[0], 10, file, lineno);
    const auto w_cnt = parse_number(f[3], 16, file, lineno);
    std::size_t p = 4;
    if (f.size() < p + 2 * w_cnt + 1) parse_fail(file, lineno, "truncated word list");
    for (std::uint32_t k = 0; k < w_cnt; ++k) {
      s.lemmas.push_back(normalize_lemma(f[p]));
      p += 2;
    }
    const auto p_cnt = parse_number(f[p++], 10, file, lineno);
    if (f.size() < p + 4 * static_cast<std::size_t>(p_cnt)) {
      parse_fail(file, lineno, "truncated pointer list");
    }
    for (std::uint32_t k = 0; k < p_cnt; ++k, p += 4) {
      const auto& sym = f[p];
      if ((sym == "@" || sym == "@i") && f[p + 2].size() == 1 && f[p + 2][0] == pos_letter) {
        s.hypernym_offsets.push_back(parse_number(f[p + 1], 10, file, lineno));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<std::uint32_t>>> read_index_file(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw FormatError("cannot open WordNet file " + file.string());
  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == ' ') continue;
    const auto f = split_fields(line);
    if (f.size() < 4) parse_fail(file, lineno, "truncated index record");
    const auto synset_cnt = parse_number(f[2], 10, file, lineno);
    const auto p_cnt = parse_number(f[3], 10, file, lineno);
    const std::size_t first = 4 + p_cnt + 2;
    if (f.size() != first + synset_cnt) parse_fail(file, lineno, "synset count mismatch");
    std::vector<std::uint32_t> offsets;
    for (std::size_t k = first; k < f.size(); ++k) {
      offsets.push_back(parse_number(f[k], 10, file, lineno));
    }
    out.emplace_back(normalize_lemma(f[0]), std::move(offsets));
  }
  return out;
}

}  // namespace

SynsetGraph SynsetGraph::load(const std::filesystem::path& dict_dir) {
  SynsetGraph g;
  for (std::size_t pi = 0; pi < 2; ++pi) {
    const auto pos = static_cast<WordNetPos>(pi);
    const auto data_path = dict_dir / (std::string("data.") + kPosSuffix[pi]);
    const auto index_path = dict_dir / (std::string("index.") + kPosSuffix[pi]);
    auto raw = read_data_file(data_path, kPosLetter[pi], g.version_);

    std::unordered_map<std::uint32_t, SynsetId> by_offset;
    const SynsetId base = g.synsets_.size();
    for (std::size_t k = 0; k < raw.size(); ++k) {
      by_offset.emplace(raw[k].offset, base + k);
    }
    for (auto& r : raw) {
      Synset s;
      s.offset = r.offset;
      s.pos = pos;
      s.lemmas = std::move(r.lemmas);
      for (auto off : r.hypernym_offsets) {
        auto it = by_offset.find(off);
        if (it == by_offset.end()) {
          throw FormatError(data_path.string() + ": hypernym " + std::to_string(off) +
                            " of synset " + std::to_string(r.offset) + " not found");
        }
        s.hypernyms.push_back(it->second);
      }
      g.synsets_.push_back(std::move(s));
    }
    for (auto& [lemma, offsets] : read_index_file(index_path)) {
      auto& ids = g.lemma_index_[pi][lemma];
      for (auto off : offsets) {
        auto it = by_offset.find(off);
        if (it == by_offset.end()) {
          throw FormatError(index_path.string() + ": lemma '" + lemma + "' points at unknown synset " +
                            std::to_string(off));
        }
        ids.push_back(it->second);
      }
    }
  }
  if (g.version_.empty()) g.version_ = "unknown";
  g.finalize();
  return g;
}

SynsetGraph SynsetGraph::build(std::vector<SynsetSpec> specs, std::string version) {
  SynsetGraph g;
  g.version_ = std::move(version);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto& spec = specs[i];
    Synset s;
    s.offset = static_cast<std::uint32_t>(i);
    s.pos = spec.pos;
    for (auto& l : spec.lemmas) s.lemmas.push_back(normalize_lemma(l));
    for (auto h : spec.hypernyms) {
      if (h >= specs.size()) throw InvalidArgument("hypernym index out of range");
      if (specs[h].pos != spec.pos) throw InvalidArgument("hypernym edges must join same-POS synsets");
      s.hypernyms.push_back(h);
    }
    for (const auto& l : s.lemmas) {
      g.lemma_index_[static_cast<std::size_t>(s.pos)][l].push_back(i);
    }
    g.synsets_.push_back(std::move(s));
  }
  g.finalize();
  return g;
}

void SynsetGraph::finalize() {
  hyponyms_.assign(synsets_.size(), {});
  for (SynsetId i = 0; i < synsets_.size(); ++i) {
    const auto& s = synsets_[i];
    if (s.hypernyms.empty()) tops_[static_cast<std::size_t>(s.pos)].push_back(i);
    for (auto h : s.hypernyms) hyponyms_[h].push_back(i);
  }
  person_ = find("person.n.01");
}

template <typename F>
void SynsetGraph::for_each_neighbor(std::size_t node, F&& f) const {
  if (node >= synsets_.size()) {
    for (auto t : tops_[node - synsets_.size()]) f(t);
    return;
  }
  const auto& s = synsets_[node];
  for (auto h : s.hypernyms) f(h);
  for (auto h : hyponyms_[node]) f(h);
  if (s.hypernyms.empty()) f(root(s.pos));
}

std::vector<SynsetId> SynsetGraph::synsets_of(std::string_view lemma, WordNetPos pos) const {
  const auto& index = lemma_index_[static_cast<std::size_t>(pos)];
  auto it = index.find(normalize_lemma(lemma));
  return it == index.end() ? std::vector<SynsetId>{} : it->second;
}

std::vector<SynsetId> SynsetGraph::synsets_of(std::string_view lemma, PosTag tag) const {
  switch (tag) {
    case PosTag::Pronoun:
      return person_ ? std::vector<SynsetId>{*person_} : std::vector<SynsetId>{};
    case PosTag::Noun: return synsets_of(lemma, WordNetPos::Noun);
    case PosTag::Verb: return synsets_of(lemma, WordNetPos::Verb);
    default: return {};
  }
}

std::string SynsetGraph::name(SynsetId id) const {
  const auto& s = synset(id);
  const auto& lemma = s.lemmas.empty() ? std::string("?") : s.lemmas.front();
  const auto senses = synsets_of(lemma, s.pos);
  const auto it = std::find(senses.begin(), senses.end(), id);
  const std::size_t rank = it == senses.end() ? 0 : static_cast<std::size_t>(it - senses.begin()) + 1;
  std::string num = std::to_string(rank);
  if (num.size() < 2) num.insert(num.begin(), '0');
  return lemma + "." + kPosLetter[static_cast<std::size_t>(s.pos)] + "." + num;
}

std::optional<SynsetId> SynsetGraph::find(std::string_view name) const {
  const auto last = name.rfind('.');
  if (last == std::string_view::npos || last == 0) return std::nullopt;
  const auto mid = name.rfind('.', last - 1);
  if (mid == std::string_view::npos || last - mid != 2) return std::nullopt;
  const char letter = name[mid + 1];
  WordNetPos pos;
  if (letter == 'n') {
    pos = WordNetPos::Noun;
  } else if (letter == 'v') {
    pos = WordNetPos::Verb;
  } else {
    return std::nullopt;
  }
  std::size_t rank = 0;
  for (char c : name.substr(last + 1)) {
    if (c < '0' || c > '9') return std::nullopt;
    rank = rank * 10 + static_cast<std::size_t>(c - '0');
  }
  const auto senses = synsets_of(name.substr(0, mid), pos);
  if (rank < 1 || rank > senses.size()) return std::nullopt;
  return senses[rank - 1];
}

std::optional<std::size_t> SynsetGraph::distance(SynsetId a, SynsetId b,
                                                 std::size_t max_depth) const {
  if (a >= synsets_.size() || b >= synsets_.size()) throw InvalidArgument("synset id out of range");
  if (synsets_[a].pos != synsets_[b].pos) {
    throw InvalidArgument("path similarity across parts of speech");
  }
  if (a == b) return 0;
  std::unordered_map<std::size_t, std::size_t> dist;
  std::deque<std::size_t> queue;
  dist.emplace(a, 0);
  queue.push_back(a);
  while (!queue.empty()) {
    const auto node = queue.front();
    queue.pop_front();
    const auto d = dist[node];
    if (d >= max_depth) continue;
    bool found = false;
    for_each_neighbor(node, [&](std::size_t next) {
      if (found || dist.count(next)) return;
      dist.emplace(next, d + 1);
      if (next == b) {
        found = true;
        return;
      }
      queue.push_back(next);
    });
    if (found) return d + 1;
  }
  return std::nullopt;
}

double SynsetGraph::path_similarity(SynsetId a, SynsetId b) const {
  const auto d = distance(a, b);
  // Always reachable through the virtual root.
  return 1.0 / (1.0 + static_cast<double>(*d));
}

bool SynsetGraph::type_consistent(const Token& a, const Token& b, double threshold) const {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("threshold must be in (0, 1]");
  const auto sa = synsets_of(a.surface, a.pos);
  const auto sb = synsets_of(b.surface, b.pos);
  // Largest distance whose similarity still beats the threshold.
  auto max_depth = static_cast<std::size_t>(1.0 / threshold);
  while (max_depth > 0 && 1.0 / (1.0 + static_cast<double>(max_depth)) <= threshold) --max_depth;
  for (auto x : sa) {
    for (auto y : sb) {
      if (synsets_[x].pos != synsets_[y].pos) continue;
      const auto d = distance(x, y, max_depth);
      if (d && 1.0 / (1.0 + static_cast<double>(*d)) > threshold) return true;
    }
  }
  return false;
}

TagLexicon SynsetGraph::lexicon() const {
  std::unordered_set<std::string> nouns, verbs;
  for (const auto& [lemma, ids] : lemma_index_[0]) nouns.insert(lemma);
  for (const auto& [lemma, ids] : lemma_index_[1]) verbs.insert(lemma);
  return TagLexicon(std::move(nouns), std::move(verbs));
}

std::optional<std::filesystem::path> wordnet_dir_from_env() {
  const char* v = std::getenv("PUNGEN_WORDNET");
  if (!v || !*v) return std::nullopt;
  return std::filesystem::path(v);
}

}  // namespace punforge
