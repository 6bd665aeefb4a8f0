#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "punforge/errors.hpp"
#include "punforge/wordnet.hpp"
#include "support.hpp"

using namespace punforge;

namespace {

std::filesystem::path real_wordnet() {
  const char* env = std::getenv("PUNGEN_WORDNET");
  return env ? env : "/opt/wordnet/wordnet-3.0";
}

bool has_wordnet(const std::filesystem::path& dir) {
  return std::filesystem::exists(dir / "data.noun") && std::filesystem::exists(dir / "index.noun");
}

Token noun(std::string w) { return Token{std::move(w), PosTag::Noun}; }

}  // namespace

TEST_CASE("path similarity equals the BFS oracle on the synthetic graph") {
  const auto specs = oracle::synthetic_hierarchy();
  const auto adj = oracle::synthetic_adjacency(specs);
  const auto g = SynsetGraph::build(specs);
  for (std::size_t a = 0; a < specs.size(); ++a) {
    const auto dist = oracle::bfs_distances(adj, static_cast<int>(a));
    for (std::size_t b = 0; b < specs.size(); ++b) {
      if (specs[a].pos != specs[b].pos) {
        CHECK_THROWS_AS(g.path_similarity(a, b), InvalidArgument);
        continue;
      }
      REQUIRE(dist[b] >= 0);
      CHECK(g.path_similarity(a, b) == 1.0 / (1.0 + dist[b]));
      CHECK(g.path_similarity(a, b) == g.path_similarity(b, a));
      CHECK(*g.distance(a, b) == static_cast<std::size_t>(dist[b]));
    }
  }
  CHECK(g.path_similarity(3, 3) == 1.0);
  CHECK(g.path_similarity(6, 3) == 0.5);
}

TEST_CASE("similarity never increases with distance") {
  const auto specs = oracle::synthetic_hierarchy();
  const auto g = SynsetGraph::build(specs);
  for (std::size_t a = 0; a < 20; ++a) {
    for (std::size_t b = 0; b < 20; ++b) {
      for (std::size_t c = 0; c < 20; ++c) {
        if (*g.distance(a, b) <= *g.distance(a, c)) {
          CHECK(g.path_similarity(a, b) >= g.path_similarity(a, c));
        }
      }
    }
  }
}

TEST_CASE("lookup, pronouns and type consistency on the synthetic graph") {
  const auto g = SynsetGraph::build(oracle::synthetic_hierarchy());
  CHECK(g.synsets_of("bank", WordNetPos::Noun).size() == 2);
  CHECK(g.synsets_of("BANK", WordNetPos::Verb).size() == 1);
  CHECK(g.synsets_of("zzzz-not-a-word", WordNetPos::Noun).empty());
  REQUIRE(g.person());
  CHECK(g.name(*g.person()) == "person.n.01");
  CHECK(g.synsets_of("i", PosTag::Pronoun) == std::vector<SynsetId>{*g.person()});
  CHECK(g.name(16) == "bank.n.01");
  CHECK(g.find("bank.n.02") == std::optional<SynsetId>{18});

  CHECK(g.type_consistent(noun("person"), noun("passenger"), 0.3));
  CHECK(g.type_consistent(Token{"she", PosTag::Pronoun}, noun("passenger"), 0.3));
  CHECK_FALSE(g.type_consistent(noun("person"), noun("ship"), 0.3));
  CHECK(g.type_consistent(noun("ship"), noun("ship"), 0.99));
  CHECK_FALSE(g.type_consistent(noun("ship"), noun("zzzz"), 0.3));
  // Distance 2 gives 1/3 > 0.3; distance 3 gives 0.25.
  CHECK(g.type_consistent(noun("ferry"), noun("vessel"), 0.3));
  CHECK_FALSE(g.type_consistent(noun("ferry"), noun("artifact"), 0.3));
  // Strict inequality.
  CHECK_FALSE(g.type_consistent(noun("ship"), noun("vessel"), 0.5));
  // Any sense pair counts: bank.n.02 (shore) is close to place.
  CHECK(g.type_consistent(noun("bank"), noun("place"), 0.3));
  for (const auto* a : {"person", "ship", "bank", "tree", "dream"}) {
    for (const auto* b : {"person", "ship", "bank", "tree", "dream"}) {
      CHECK(g.type_consistent(noun(a), noun(b), 0.3) == g.type_consistent(noun(b), noun(a), 0.3));
    }
  }
}

TEST_CASE("bundled mini WordNet loads") {
  const auto g = SynsetGraph::load(std::filesystem::path(PUNFORGE_DATA_DIR) / "miniwordnet");
  CHECK(g.version() == "mini-1.0");
  CHECK_FALSE(g.synsets_of("greyhound", WordNetPos::Noun).empty());
  CHECK(g.type_consistent(noun("dog"), noun("greyhound"), 0.3));
  CHECK(g.type_consistent(Token{"she", PosTag::Pronoun}, noun("hunter"), 0.3));
  CHECK_FALSE(g.type_consistent(noun("person"), noun("ship"), 0.3));
  const auto lex = g.lexicon();
  CHECK(lex.lookup("hare") == PosTag::Noun);
  CHECK(lex.lookup("chased") == PosTag::Verb);
  CHECK(lex.lookup("the") == PosTag::Other);
}

TEST_CASE("malformed files report file and line") {
  const auto dir = std::filesystem::temp_directory_path() / "punforge_bad_wn";
  std::filesystem::create_directories(dir);
  for (const auto* pos : {"noun", "verb"}) {
    std::ofstream(dir / (std::string("index.") + pos)) << "  1 header\n";
    std::ofstream(dir / (std::string("data.") + pos)) << "  1 header\n";
  }
  std::ofstream(dir / "data.noun") << "  1 header\n00000020 03 n zz dog 0 000 | bad count\n";
  try {
    SynsetGraph::load(dir);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("data.noun:2") != std::string::npos);
  }
  std::filesystem::remove(dir / "index.verb");
  CHECK_THROWS_AS(SynsetGraph::load(dir), FormatError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("real WordNet 3.0") {
  const auto dir = real_wordnet();
  if (!has_wordnet(dir)) {
    MESSAGE("WordNet 3.0 not found at " << dir.string() << "; skipped");
    return;
  }
  const auto g = SynsetGraph::load(dir);
  CHECK(g.version() == "WordNet 3.0");
  CHECK_FALSE(g.synsets_of("dog", WordNetPos::Noun).empty());
  REQUIRE(g.person());
  CHECK(g.name(*g.person()) == "person.n.01");
  CHECK(g.synset(*g.person()).offset == 7846);
  CHECK(g.type_consistent(noun("person"), noun("passenger"), 0.3));
  CHECK_FALSE(g.type_consistent(noun("person"), noun("ship"), 0.3));
}
