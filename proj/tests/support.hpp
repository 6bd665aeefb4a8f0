#pragma once

// Reference implementations used as test oracles. Each one recomputes its
// quantity the slow, direct way and shares no code with the library.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "punforge/corpus.hpp"
#include "punforge/ngram_lm.hpp"
#include "punforge/retrieval.hpp"
#include "punforge/wordnet.hpp"

namespace oracle {

std::vector<punforge::Sentence> sentences(const std::vector<std::string>& lines);

// Fixed conditional tables; histories longer than order-1 are truncated.
// Missing entries fall back to `floor`.
class HandLM final : public punforge::LanguageModel {
 public:
  HandLM(std::vector<std::string> words, int order, double floor = 0.0);

  void set(const std::vector<std::string>& history, const std::string& word, double p);
  void set_unigram(const std::string& word, double p);

  int order() const override { return order_; }
  punforge::TokenId bos() const override;
  punforge::TokenId eos() const override;
  punforge::TokenId lookup(std::string_view word) const override;
  double logprob(punforge::TokenId word, std::span<const punforge::TokenId> history) const override;
  double unigram_logprob(punforge::TokenId word) const override;

  double p(const std::vector<punforge::TokenId>& history, punforge::TokenId word) const;

 private:
  std::vector<std::string> words_;
  int order_;
  double floor_;
  std::map<std::pair<std::vector<punforge::TokenId>, punforge::TokenId>, double> table_;
  std::map<punforge::TokenId, double> unigram_;
};

// Interpolated modified Kneser-Ney computed straight from n-gram occurrence
// scans on every query. Only suitable for tiny corpora.
class ReferenceKN {
 public:
  ReferenceKN(const std::vector<punforge::Sentence>& corpus, const punforge::Vocabulary& vocab,
              int order);

  double prob(int word, std::vector<int> history) const;
  std::vector<double> discounts(int length) const;
  int bos() const { return bos_; }
  int eos() const { return eos_; }

 private:
  long raw(const std::vector<int>& gram) const;
  long adjusted(const std::vector<int>& gram) const;
  double p(int word, const std::vector<int>& ctx) const;

  std::vector<std::vector<int>> padded_;
  int order_;
  int vocab_size_;
  int bos_;
  int eos_;
  std::vector<std::vector<double>> discounts_;
};

// Shortest path over an undirected adjacency list.
std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int source);

// 20 noun synsets in three disconnected trees plus a small verb tree.
std::vector<punforge::SynsetSpec> synthetic_hierarchy();
// Undirected adjacency of the synthetic hierarchy with one virtual root per POS.
std::vector<std::vector<int>> synthetic_adjacency(const std::vector<punforge::SynsetSpec>& specs);

struct KaoBrute {
  double p_pun;
  std::vector<double> f_pun;
  std::vector<double> f_alt;
  double sym_kl;  // over the joint 2^n assignment distributions
};
KaoBrute kao_enumerate(const std::vector<double>& uni, const std::vector<double>& rel_p,
                       const std::vector<double>& rel_a);

std::vector<std::pair<std::size_t, std::size_t>> band_pairs_brute(std::size_t n, std::size_t d1,
                                                                  std::size_t d2);

std::vector<double> average_ranks_brute(const std::vector<double>& v);
double spearman_brute(const std::vector<double>& x, const std::vector<double>& y);

struct SeedRef {
  std::size_t sentence;
  std::size_t position;
};
// Linear scan + full sort.
std::vector<SeedRef> retrieve_brute(const std::vector<punforge::Sentence>& corpus,
                                    const std::string& alt, std::size_t pool, std::size_t keep,
                                    std::size_t min_len, std::size_t max_len, bool absolute);

// Greyhound appears 5 to 10 tokens before hare; fillers elsewhere.
std::vector<punforge::Sentence> greyhound_corpus(std::uint64_t seed, std::size_t n);

}  // namespace oracle
