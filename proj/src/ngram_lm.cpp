#include "punforge/ngram_lm.hpp"

#include <algorithm>
#include <cmath>

#include "punforge/binary_io.hpp"
#include "punforge/errors.hpp"

namespace punforge {

namespace {

constexpr std::string_view kLmMagic = "PGLM";
constexpr std::uint32_t kLmVersion = 1;

std::array<double, 3> estimate_discounts(const std::array<std::uint64_t, 4>& n) {
  const std::array<double, 3> fallback = {NGramModel::kFallbackDiscount,
                                          NGramModel::kFallbackDiscount,
                                          NGramModel::kFallbackDiscount};
  if (n[0] == 0 || n[1] == 0 || n[2] == 0 || n[3] == 0) return fallback;
  const double n1 = static_cast<double>(n[0]);
  const double n2 = static_cast<double>(n[1]);
  const double n3 = static_cast<double>(n[2]);
  const double n4 = static_cast<double>(n[3]);
  const double y = n1 / (n1 + 2.0 * n2);
  std::array<double, 3> d = {1.0 - 2.0 * y * n2 / n1, 2.0 - 3.0 * y * n3 / n2,
                             3.0 - 4.0 * y * n4 / n3};
  for (int i = 0; i < 3; ++i) {
    if (!(d[i] > 0.0 && d[i] <= static_cast<double>(i + 1))) return fallback;
  }
  return d;
}

double discount_for(const std::array<double, 3>& d, std::uint64_t count) {
  return count >= 3 ? d[2] : d[count - 1];
}

}  // namespace

double logprob_seq(const LanguageModel& lm, std::span<const TokenId> tokens,
                   bool boundary_markers) {
  std::vector<TokenId> seq;
  seq.reserve(tokens.size() + 2);
  if (boundary_markers) seq.push_back(lm.bos());
  seq.insert(seq.end(), tokens.begin(), tokens.end());
  if (boundary_markers) seq.push_back(lm.eos());

  const std::size_t first = boundary_markers ? 1 : 0;
  const std::size_t max_hist = static_cast<std::size_t>(std::max(lm.order() - 1, 0));
  double total = 0.0;
  for (std::size_t i = first; i < seq.size(); ++i) {
    const std::size_t h = std::min(i, max_hist);
    total += lm.logprob(seq[i], std::span<const TokenId>(seq.data() + i - h, h));
  }
  return total;
}

NGramModel NGramModel::train(std::span<const Sentence> sentences,
                             std::shared_ptr<const Vocabulary> vocab, int order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw InvalidArgument("n-gram order must be in [2, 6], got " + std::to_string(order));
  }
  if (!vocab) throw InvalidArgument("n-gram training needs a vocabulary");

  NGramModel m;
  m.order_ = order;
  m.vocab_ = std::move(vocab);
  const TokenId bos = m.bos();
  const TokenId eos = m.eos();
  const auto n = static_cast<std::size_t>(order);

  std::uint64_t tokens = 0;
  // raw[k-1]: raw occurrence counts of n-grams of length k ending on a
  // predicted position.
  std::vector<std::unordered_map<Key, std::uint64_t>> raw(n);
  Key seq;
  for (const auto& s : sentences) {
    tokens += s.size();
    seq.clear();
    seq.push_back(bos);
    for (const auto& t : s.tokens) seq.push_back(m.vocab_->id(t.surface));
    seq.push_back(eos);
    for (std::size_t j = 1; j < seq.size(); ++j) {
      for (std::size_t k = 1; k <= std::min(n, j + 1); ++k) {
        ++raw[k - 1][seq.substr(j + 1 - k, k)];
      }
    }
  }
  if (tokens < n) {
    throw InvalidArgument("corpus has " + std::to_string(tokens) +
                          " tokens, fewer than the n-gram order " + std::to_string(order));
  }

  // Adjusted counts.
  std::vector<std::unordered_map<Key, std::uint64_t>> adjusted(n);
  adjusted[n - 1] = raw[n - 1];
  for (std::size_t k = n - 1; k >= 1; --k) {
    auto& adj = adjusted[k - 1];
    for (const auto& [gram, c] : raw[k - 1]) {
      if (gram[0] == bos) adj[gram] = c;
    }
    for (const auto& [longer, c] : raw[k]) {
      (void)c;
      if (longer.size() == k + 1) ++adj[longer.substr(1)];
    }
  }

  m.levels_.resize(n);
  m.discounts_.resize(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& adj = adjusted[k - 1];
    std::array<std::uint64_t, 4> coc = {0, 0, 0, 0};
    for (const auto& [gram, c] : adj) {
      if (c >= 1 && c <= 4) ++coc[c - 1];
    }
    const auto d = estimate_discounts(coc);
    m.discounts_[k - 1] = d;

    struct ContextStats {
      std::uint64_t total = 0;
      std::array<std::uint64_t, 3> types = {0, 0, 0};
    };
    std::unordered_map<Key, ContextStats> ctx;
    for (const auto& [gram, c] : adj) {
      auto& st = ctx[gram.substr(0, k - 1)];
      st.total += c;
      ++st.types[std::min<std::uint64_t>(c, 3) - 1];
    }
    auto& level = m.levels_[k - 1];
    for (const auto& [gram, c] : adj) {
      const auto& st = ctx.at(gram.substr(0, k - 1));
      level.alpha[gram] =
          (static_cast<double>(c) - discount_for(d, c)) / static_cast<double>(st.total);
    }
    for (const auto& [h, st] : ctx) {
      double mass = 0.0;
      for (int i = 0; i < 3; ++i) mass += d[i] * static_cast<double>(st.types[i]);
      level.gamma[h] = mass / static_cast<double>(st.total);
    }
  }
  return m;
}

TokenId NGramModel::clamp_id(TokenId id) const {
  return id > eos() ? Vocabulary::kUnk : id;
}

double NGramModel::prob_recursive(TokenId word, const TokenId* hist, std::size_t len) const {
  double lower;
  if (len == 0) {
    lower = 1.0 / static_cast<double>(vocab_->size() + 1);
  } else {
    lower = prob_recursive(word, hist + 1, len - 1);
  }
  const auto& level = levels_[len];
  Key context(hist, hist + len);
  auto g = level.gamma.find(context);
  if (g == level.gamma.end()) return lower;
  context.push_back(word);
  auto a = level.alpha.find(context);
  const double alpha = a == level.alpha.end() ? 0.0 : a->second;
  return alpha + g->second * lower;
}

double NGramModel::prob(TokenId word, std::span<const TokenId> history) const {
  word = clamp_id(word);
  const std::size_t h = std::min(history.size(), static_cast<std::size_t>(order_ - 1));
  std::vector<TokenId> hist(history.end() - static_cast<std::ptrdiff_t>(h), history.end());
  for (auto& id : hist) id = clamp_id(id);
  return prob_recursive(word, hist.data(), hist.size());
}

double NGramModel::logprob(TokenId word, std::span<const TokenId> history) const {
  return std::log(prob(word, history));
}

double NGramModel::unigram_logprob(TokenId word) const {
  word = clamp_id(word);
  if (word >= vocab_->size()) word = Vocabulary::kUnk;
  const double v = static_cast<double>(vocab_->size());
  const double total = static_cast<double>(vocab_->total_count());
  return std::log((static_cast<double>(vocab_->count(word)) + 1.0) / (total + v));
}

double NGramModel::backoff_weight(std::span<const TokenId> context) const {
  if (context.size() >= levels_.size()) return 1.0;
  Key key(context.begin(), context.end());
  const auto& gamma = levels_[context.size()].gamma;
  auto it = gamma.find(key);
  return it == gamma.end() ? 1.0 : it->second;
}

void NGramModel::save(const std::filesystem::path& path) const {
  BinaryWriter head;
  head.u32(kLmVersion);
  head.u32(static_cast<std::uint32_t>(order_));
  head.u64(vocab_->hash());
  head.u64(vocab_->size());
  for (const auto& d : discounts_) {
    for (double x : d) head.f64(x);
  }

  BinaryWriter tables;
  for (const auto& level : levels_) {
    // Sorted so that identical models produce identical files.
    std::vector<std::pair<Key, double>> alpha(level.alpha.begin(), level.alpha.end());
    std::vector<std::pair<Key, double>> gamma(level.gamma.begin(), level.gamma.end());
    std::sort(alpha.begin(), alpha.end());
    std::sort(gamma.begin(), gamma.end());
    for (const auto* table : {&alpha, &gamma}) {
      tables.u64(table->size());
      for (const auto& [key, value] : *table) {
        tables.u32(static_cast<std::uint32_t>(key.size()));
        for (auto id : key) tables.u32(id);
        tables.f64(value);
      }
    }
  }
  write_file(path, write_container(kLmMagic, {{"HEAD", head.take()}, {"TABL", tables.take()}}));
}

NGramModel NGramModel::load(const std::filesystem::path& path,
                            std::shared_ptr<const Vocabulary> vocab) {
  const auto data = read_file(path);
  auto sections = read_container(data, kLmMagic, path.string());
  if (!sections.count("HEAD") || !sections.count("TABL")) {
    throw FormatError(path.string() + ": missing HEAD or TABL section");
  }
  BinaryReader head(sections["HEAD"], path.string() + " HEAD");
  if (head.u32() != kLmVersion) head.fail("unsupported version");
  NGramModel m;
  m.order_ = static_cast<int>(head.u32());
  if (m.order_ < kMinOrder || m.order_ > kMaxOrder) head.fail("bad order");
  const auto hash = head.u64();
  const auto size = head.u64();
  if (!vocab || hash != vocab->hash() || size != vocab->size()) {
    throw FormatError(path.string() + ": vocabulary hash mismatch");
  }
  m.vocab_ = std::move(vocab);
  m.discounts_.resize(static_cast<std::size_t>(m.order_));
  for (auto& d : m.discounts_) {
    for (double& x : d) x = head.f64();
  }
  BinaryReader tables(sections["TABL"], path.string() + " TABL");
  m.levels_.resize(static_cast<std::size_t>(m.order_));
  for (auto& level : m.levels_) {
    for (auto* table : {&level.alpha, &level.gamma}) {
      const auto n = tables.u64();
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto len = tables.u32();
        if (len > static_cast<std::uint32_t>(m.order_)) tables.fail("bad n-gram length");
        Key key;
        for (std::uint32_t k = 0; k < len; ++k) key.push_back(tables.u32());
        (*table)[key] = tables.f64();
      }
    }
  }
  return m;
}

}  // namespace punforge
