#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace oracle {

using punforge::Sentence;
using punforge::Token;
using punforge::TokenId;

std::vector<Sentence> sentences(const std::vector<std::string>& lines) {
  std::vector<Sentence> out;
  for (const auto& line : lines) {
    Sentence s;
    s.id = static_cast<std::uint32_t>(out.size());
    for (auto& w : punforge::tokenize(line)) s.tokens.push_back(Token{w, punforge::PosTag::Unknown});
    out.push_back(std::move(s));
  }
  return out;
}

// ---- HandLM ----------------------------------------------------------------

HandLM::HandLM(std::vector<std::string> words, int order, double floor)
    : words_(std::move(words)), order_(order), floor_(floor) {}

TokenId HandLM::bos() const { return static_cast<TokenId>(words_.size()); }
TokenId HandLM::eos() const { return static_cast<TokenId>(words_.size() + 1); }

TokenId HandLM::lookup(std::string_view word) const {
  if (word == "<s>") return bos();
  if (word == "</s>") return eos();
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] == word) return static_cast<TokenId>(i);
  }
  return 0;
}

void HandLM::set(const std::vector<std::string>& history, const std::string& word, double p) {
  std::vector<TokenId> h;
  for (const auto& w : history) h.push_back(lookup(w));
  table_[{h, lookup(word)}] = p;
}

void HandLM::set_unigram(const std::string& word, double p) { unigram_[lookup(word)] = p; }

double HandLM::p(const std::vector<TokenId>& history, TokenId word) const {
  std::vector<TokenId> h = history;
  const auto keep = static_cast<std::size_t>(order_ - 1);
  if (h.size() > keep) h.erase(h.begin(), h.end() - static_cast<std::ptrdiff_t>(keep));
  auto it = table_.find({h, word});
  return it == table_.end() ? floor_ : it->second;
}

double HandLM::logprob(TokenId word, std::span<const TokenId> history) const {
  return std::log(p(std::vector<TokenId>(history.begin(), history.end()), word));
}

double HandLM::unigram_logprob(TokenId word) const {
  auto it = unigram_.find(word);
  return std::log(it == unigram_.end() ? floor_ : it->second);
}

// ---- ReferenceKN -------------------------------------------------------------

ReferenceKN::ReferenceKN(const std::vector<Sentence>& corpus, const punforge::Vocabulary& vocab,
                         int order)
    : order_(order), vocab_size_(static_cast<int>(vocab.size())) {
  bos_ = vocab_size_;
  eos_ = vocab_size_ + 1;
  for (const auto& s : corpus) {
    std::vector<int> seq = {bos_};
    for (const auto& t : s.tokens) seq.push_back(static_cast<int>(vocab.id(t.surface)));
    seq.push_back(eos_);
    padded_.push_back(seq);
  }
  for (int k = 1; k <= order; ++k) {
    std::set<std::vector<int>> grams;
    for (const auto& seq : padded_) {
      for (std::size_t i = 0; i + k <= seq.size(); ++i) {
        std::vector<int> g(seq.begin() + i, seq.begin() + i + k);
        if (k == 1 && g[0] == bos_) continue;
        grams.insert(g);
      }
    }
    double n[5] = {0, 0, 0, 0, 0};
    for (const auto& g : grams) {
      const long a = adjusted(g);
      if (a >= 1 && a <= 4) n[a] += 1;
    }
    std::vector<double> d(3, 0.75);
    if (n[1] > 0 && n[2] > 0 && n[3] > 0 && n[4] > 0) {
      const double y = n[1] / (n[1] + 2 * n[2]);
      std::vector<double> e = {1 - 2 * y * n[2] / n[1], 2 - 3 * y * n[3] / n[2],
                               3 - 4 * y * n[4] / n[3]};
      bool ok = true;
      for (int i = 0; i < 3; ++i) ok = ok && e[i] > 0 && e[i] <= i + 1;
      if (ok) d = e;
    }
    discounts_.push_back(d);
  }
}

std::vector<double> ReferenceKN::discounts(int length) const { return discounts_[length - 1]; }

long ReferenceKN::raw(const std::vector<int>& gram) const {
  if (gram.size() == 1 && gram[0] == bos_) return 0;
  long c = 0;
  for (const auto& seq : padded_) {
    for (std::size_t i = 0; i + gram.size() <= seq.size(); ++i) {
      if (std::equal(gram.begin(), gram.end(), seq.begin() + i)) ++c;
    }
  }
  return c;
}

long ReferenceKN::adjusted(const std::vector<int>& gram) const {
  if (static_cast<int>(gram.size()) == order_ || gram[0] == bos_) return raw(gram);
  std::set<int> left;
  for (const auto& seq : padded_) {
    for (std::size_t i = 1; i + gram.size() <= seq.size(); ++i) {
      if (std::equal(gram.begin(), gram.end(), seq.begin() + i)) left.insert(seq[i - 1]);
    }
  }
  return static_cast<long>(left.size());
}

double ReferenceKN::p(int word, const std::vector<int>& ctx) const {
  const double lower =
      ctx.empty() ? 1.0 / (vocab_size_ + 1) : p(word, std::vector<int>(ctx.begin() + 1, ctx.end()));
  const auto& d = discounts_[ctx.size()];
  // All continuations of ctx seen in the data.
  std::set<int> next;
  for (const auto& seq : padded_) {
    for (std::size_t i = 0; i + ctx.size() < seq.size(); ++i) {
      if (std::equal(ctx.begin(), ctx.end(), seq.begin() + i)) next.insert(seq[i + ctx.size()]);
    }
  }
  double total = 0;
  double n[3] = {0, 0, 0};
  for (int w : next) {
    auto g = ctx;
    g.push_back(w);
    if (g.size() == 1 && g[0] == bos_) continue;
    const long a = adjusted(g);
    total += a;
    n[std::min<long>(a, 3) - 1] += 1;
  }
  if (total == 0) return lower;
  auto g = ctx;
  g.push_back(word);
  const long a = next.count(word) ? adjusted(g) : 0;
  const double alpha = a > 0 ? (a - d[std::min<long>(a, 3) - 1]) / total : 0.0;
  const double gamma = (d[0] * n[0] + d[1] * n[1] + d[2] * n[2]) / total;
  return alpha + gamma * lower;
}

double ReferenceKN::prob(int word, std::vector<int> history) const {
  const auto keep = static_cast<std::size_t>(order_ - 1);
  if (history.size() > keep) history.erase(history.begin(), history.end() - keep);
  return p(word, history);
}

// ---- graphs ------------------------------------------------------------------

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::vector<punforge::SynsetSpec> synthetic_hierarchy() {
  using punforge::WordNetPos;
  auto n = [](std::vector<std::string> lemmas, std::vector<std::size_t> hyper) {
    return punforge::SynsetSpec{WordNetPos::Noun, std::move(lemmas), std::move(hyper)};
  };
  auto v = [](std::vector<std::string> lemmas, std::vector<std::size_t> hyper) {
    return punforge::SynsetSpec{WordNetPos::Verb, std::move(lemmas), std::move(hyper)};
  };
  return {
      n({"thing"}, {}),                // 0
      n({"living"}, {0}),              // 1
      n({"object"}, {0}),              // 2
      n({"animal"}, {1}),              // 3
      n({"plant"}, {1}),               // 4
      n({"artifact"}, {2}),            // 5
      n({"person", "human"}, {3}),     // 6
      n({"dog"}, {3}),                 // 7
      n({"tree"}, {4, 5}),             // 8 (two hypernyms)
      n({"vessel"}, {5}),              // 9
      n({"ship"}, {9}),                // 10
      n({"ferry"}, {10}),              // 11
      n({"idea"}, {}),                 // 12
      n({"plan"}, {12}),               // 13
      n({"dream"}, {12}),              // 14
      n({"scheme"}, {13}),             // 15
      n({"bank", "plot"}, {15}),       // 16
      n({"place"}, {}),                // 17
      n({"shore", "bank"}, {17}),      // 18
      n({"passenger"}, {6}),           // 19
      v({"move"}, {}),                 // 20
      v({"run"}, {20}),                // 21
      v({"walk", "bank"}, {20}),       // 22
  };
}

std::vector<std::vector<int>> synthetic_adjacency(const std::vector<punforge::SynsetSpec>& specs) {
  const int n = static_cast<int>(specs.size());
  std::vector<std::vector<int>> adj(n + 2);
  for (int i = 0; i < n; ++i) {
    const int root = n + (specs[i].pos == punforge::WordNetPos::Noun ? 0 : 1);
    if (specs[i].hypernyms.empty()) {
      adj[i].push_back(root);
      adj[root].push_back(i);
    }
    for (auto h : specs[i].hypernyms) {
      adj[i].push_back(static_cast<int>(h));
      adj[h].push_back(i);
    }
  }
  return adj;
}

// ---- Kao ---------------------------------------------------------------------

KaoBrute kao_enumerate(const std::vector<double>& uni, const std::vector<double>& rel_p,
                       const std::vector<double>& rel_a) {
  const std::size_t n = uni.size();
  const std::size_t outcomes = std::size_t{1} << n;
  std::vector<double> joint_p(outcomes), joint_a(outcomes);
  for (std::size_t f = 0; f < outcomes; ++f) {
    double jp = 0.5, ja = 0.5;
    for (std::size_t i = 0; i < n; ++i) {
      const bool related = (f >> i) & 1;
      jp *= 0.5 * (related ? rel_p[i] : uni[i]);
      ja *= 0.5 * (related ? rel_a[i] : uni[i]);
    }
    joint_p[f] = jp;
    joint_a[f] = ja;
  }
  double zp = 0, za = 0;
  for (std::size_t f = 0; f < outcomes; ++f) {
    zp += joint_p[f];
    za += joint_a[f];
  }
  KaoBrute out;
  out.p_pun = zp / (zp + za);
  out.f_pun.assign(n, 0.0);
  out.f_alt.assign(n, 0.0);
  double kl = 0;
  for (std::size_t f = 0; f < outcomes; ++f) {
    const double qp = joint_p[f] / zp;
    const double qa = joint_a[f] / za;
    for (std::size_t i = 0; i < n; ++i) {
      if ((f >> i) & 1) {
        out.f_pun[i] += qp;
        out.f_alt[i] += qa;
      }
    }
    kl += qp * std::log(qp / qa) + qa * std::log(qa / qp);
  }
  out.sym_kl = kl;
  return out;
}

// ---- skip-gram ---------------------------------------------------------------

std::vector<std::pair<std::size_t, std::size_t>> band_pairs_brute(std::size_t n, std::size_t d1,
                                                                  std::size_t d2) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d >= d1 && d <= d2) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Sentence> greyhound_corpus(std::uint64_t seed, std::size_t n) {
  static const std::vector<std::string> filler = {
      "field", "ran",  "across", "morning", "quick", "green", "hill", "river", "watched", "farm",
      "old",   "long", "road",   "day",     "tree",  "fence", "barn", "grass", "wind",    "sky"};
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  std::vector<Sentence> out;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t len = 12 + pick(6);
    std::vector<std::string> words(len);
    for (auto& w : words) w = filler[pick(filler.size())];
    if (s % 4 != 3) {
      const std::size_t dist = 5 + pick(6);
      const std::size_t g = pick(len - dist);
      words[g] = "greyhound";
      words[g + dist] = "hare";
      // A close neighbour that the band must ignore.
      if (g + dist + 1 < len) words[g + dist + 1] = "rabbit";
    }
    Sentence sent;
    sent.id = static_cast<std::uint32_t>(s);
    for (auto& w : words) sent.tokens.push_back(Token{w, punforge::PosTag::Unknown});
    out.push_back(std::move(sent));
  }
  return out;
}

// ---- statistics ------------------------------------------------------------

std::vector<double> average_ranks_brute(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double x : v) {
      if (x < v[i]) less += 1;
      if (x == v[i]) equal += 1;
    }
    r[i] = less + (equal + 1) / 2;
  }
  return r;
}

double spearman_brute(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = average_ranks_brute(x);
  const auto ry = average_ranks_brute(y);
  const double n = static_cast<double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// ---- retrieval ---------------------------------------------------------------

std::vector<SeedRef> retrieve_brute(const std::vector<Sentence>& corpus, const std::string& alt,
                                    std::size_t pool, std::size_t keep, std::size_t min_len,
                                    std::size_t max_len, bool absolute) {
  std::vector<SeedRef> found;
  for (std::size_t s = 0; s < corpus.size() && found.size() < pool; ++s) {
    const auto& sent = corpus[s];
    if (sent.size() < min_len || sent.size() > max_len) continue;
    std::size_t hits = 0, where = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (sent.word(i) == alt) {
        ++hits;
        where = i;
      }
    }
    if (hits == 1) found.push_back({s, where});
  }
  auto key = [&](const SeedRef& r) {
    const double len = static_cast<double>(corpus[r.sentence].size());
    const double pos = absolute ? static_cast<double>(r.position) : r.position / len;
    return std::make_tuple(-pos, len, corpus[r.sentence].id);
  };
  std::sort(found.begin(), found.end(),
            [&](const SeedRef& a, const SeedRef& b) { return key(a) < key(b); });
  if (found.size() > keep) found.resize(keep);
  return found;
}

}  // namespace oracle
