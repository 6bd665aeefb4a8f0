#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "punforge/errors.hpp"
#include "punforge/ngram_lm.hpp"
#include "support.hpp"

using namespace punforge;

namespace {

struct Trained {
  std::vector<Sentence> sentences;
  std::shared_ptr<const Vocabulary> vocab;
  NGramModel model;
};

Trained train(const std::vector<std::string>& lines, int order) {
  auto s = oracle::sentences(lines);
  auto v = std::make_shared<const Vocabulary>(Vocabulary::build(s, 1));
  auto m = NGramModel::train(s, v, order);
  return {std::move(s), v, std::move(m)};
}

std::vector<std::string> random_corpus(std::mt19937_64& rng, std::size_t max_tokens,
                                       std::size_t alphabet) {
  std::vector<std::string> lines;
  std::size_t total = 0;
  while (true) {
    const std::size_t len = 1 + rng() % 6;
    if (total + len > max_tokens) break;
    std::string line;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) line += ' ';
      line += static_cast<char>('a' + rng() % alphabet);
    }
    lines.push_back(line);
    total += len;
  }
  return lines;
}

double mass(const NGramModel& m, const std::vector<TokenId>& ctx) {
  double sum = 0;
  for (TokenId w = 0; w < m.vocab().size(); ++w) sum += m.prob(w, ctx);
  return sum + m.prob(m.eos(), ctx);
}

}  // namespace

TEST_CASE("toy bigram corpus prefers the frequent continuation") {
  auto t = train({"a b", "a b", "a c"}, 2);
  const TokenId a = t.vocab->id("a"), b = t.vocab->id("b"), c = t.vocab->id("c");
  const std::vector<TokenId> ctx = {a};
  CHECK(t.model.prob(b, ctx) > t.model.prob(c, ctx));

  auto more = train({"a b", "a b", "a c", "a b"}, 2);
  const std::vector<TokenId> ctx2 = {more.vocab->id("a")};
  CHECK(more.model.prob(more.vocab->id("b"), ctx2) >= t.model.prob(b, ctx));
}

TEST_CASE("single continuation is the most likely one") {
  auto t = train({"a a a a"}, 2);
  const TokenId a = t.vocab->id("a");
  const std::vector<TokenId> ctx = {a};
  const double pa = t.model.prob(a, ctx);
  CHECK(pa > t.model.prob(t.model.eos(), ctx));
  CHECK(pa > t.model.prob(Vocabulary::kUnk, ctx));
}

TEST_CASE("conditional distributions normalize") {
  std::mt19937_64 rng(11);
  for (int order = 2; order <= 5; ++order) {
    auto t = train(random_corpus(rng, 400, 7), order);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<TokenId> ctx;
      const std::size_t len = rng() % static_cast<std::size_t>(order);
      if (len > 0 && rng() % 3 == 0) ctx.push_back(t.model.bos());
      while (ctx.size() < len) ctx.push_back(static_cast<TokenId>(rng() % t.vocab->size()));
      CHECK(mass(t.model, ctx) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("probabilities match the reference Kneser-Ney computation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int order = 2 + static_cast<int>(trial % 4);
    auto t = train(random_corpus(rng, 50, 3 + trial % 4), order);
    const oracle::ReferenceKN ref(t.sentences, *t.vocab, order);
    for (int k = 1; k <= order; ++k) {
      const auto d = ref.discounts(k);
      for (int i = 0; i < 3; ++i) CHECK(t.model.discounts(k)[i] == doctest::Approx(d[i]).epsilon(1e-12));
    }
    for (int q = 0; q < 60; ++q) {
      std::vector<TokenId> ctx;
      std::vector<int> ref_ctx;
      const std::size_t len = rng() % static_cast<std::size_t>(order + 1);
      if (rng() % 3 == 0) {
        ctx.push_back(t.model.bos());
        ref_ctx.push_back(ref.bos());
      }
      while (ctx.size() < len) {
        const auto w = static_cast<TokenId>(rng() % t.vocab->size());
        ctx.push_back(w);
        ref_ctx.push_back(static_cast<int>(w));
      }
      const auto word = static_cast<TokenId>(rng() % (t.vocab->size() + 1));
      const TokenId query = word == t.vocab->size() ? t.model.eos() : word;
      const int ref_query = word == t.vocab->size() ? ref.eos() : static_cast<int>(word);
      CHECK(std::abs(t.model.prob(query, ctx) - ref.prob(ref_query, ref_ctx)) < 1e-9);
    }
  }
}

TEST_CASE("probabilities lie in (0, 1] and backoff weights in (0, 1]") {
  std::mt19937_64 rng(8);
  auto t = train(random_corpus(rng, 300, 6), 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenId> ctx = {static_cast<TokenId>(rng() % t.vocab->size()),
                                static_cast<TokenId>(rng() % t.vocab->size())};
    const double p = t.model.prob(static_cast<TokenId>(rng() % t.vocab->size()), ctx);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    const double g = t.model.backoff_weight(ctx);
    CHECK(g > 0.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("add-one unigram estimate") {
  // 10 tokens, 4 words plus UNK.
  auto t = train({"x x y y z z z w w w"}, 2);
  REQUIRE(t.vocab->size() == 5);
  CHECK(t.model.unigram_logprob(t.vocab->id("x")) == doctest::Approx(std::log(3.0 / 15.0)));
  CHECK(t.model.unigram_logprob(Vocabulary::kUnk) == doctest::Approx(std::log(1.0 / 15.0)));
  double sum = 0;
  for (TokenId w = 0; w < t.vocab->size(); ++w) sum += std::exp(t.model.unigram_logprob(w));
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sequence scoring") {
  auto t = train({"a b c", "a b c", "c b a", "a b"}, 3);
  const auto a = t.vocab->id("a"), b = t.vocab->id("b"), c = t.vocab->id("c");
  const std::vector<TokenId> one = {a};
  CHECK(logprob_seq(t.model, one, false) == doctest::Approx(std::log(t.model.prob(a, {}))));

  const std::vector<TokenId> fwd = {a, b, c}, rev = {c, b, a};
  CHECK(logprob_seq(t.model, fwd, false) != logprob_seq(t.model, rev, false));
  CHECK(logprob_seq(t.model, fwd, true) == logprob_seq(t.model, fwd, true));

  // Chain rule with markers, spelled out.
  const std::vector<TokenId> s = {t.model.bos(), a, b, c, t.model.eos()};
  double expect = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const std::size_t h = std::min<std::size_t>(i, 2);
    expect += std::log(t.model.prob(s[i], std::vector<TokenId>(s.begin() + i - h, s.begin() + i)));
  }
  CHECK(logprob_seq(t.model, fwd, true) == doctest::Approx(expect).epsilon(1e-12));

  // OOV ids are treated as UNK.
  CHECK(t.model.prob(999, one) == t.model.prob(Vocabulary::kUnk, one));
}

TEST_CASE("training errors") {
  auto s = oracle::sentences({"a b"});
  auto v = std::make_shared<const Vocabulary>(Vocabulary::build(s, 1));
  CHECK_THROWS_AS(NGramModel::train(s, v, 1), InvalidArgument);
  CHECK_THROWS_AS(NGramModel::train(s, v, 7), InvalidArgument);
  CHECK_THROWS_AS(NGramModel::train(s, v, 3), InvalidArgument);
  CHECK_NOTHROW(NGramModel::train(s, v, 2));
}

TEST_CASE("save and load round-trip and check the vocabulary") {
  std::mt19937_64 rng(4);
  auto t = train(random_corpus(rng, 200, 5), 3);
  const auto path = std::filesystem::temp_directory_path() / "punforge_lm_test.bin";
  t.model.save(path);
  const auto back = NGramModel::load(path, t.vocab);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TokenId> ctx = {static_cast<TokenId>(rng() % t.vocab->size())};
    const auto w = static_cast<TokenId>(rng() % t.vocab->size());
    CHECK(back.prob(w, ctx) == t.model.prob(w, ctx));
  }
  auto other = std::make_shared<const Vocabulary>(
      Vocabulary::build(oracle::sentences({"zz yy"}), 1));
  CHECK_THROWS_AS(NGramModel::load(path, other), FormatError);
  std::filesystem::remove(path);
}
