#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace punforge {

struct Rating {
  std::string item;
  std::string rater;
  std::optional<double> score;  // nullopt for N/A
};

struct RatingsTable {
  std::vector<Rating> records;
};

// CSV "item_id,rater_id,score" with a header row and literal NA for N/A.
// Throws FormatError on malformed rows or duplicate (item, rater) pairs.
RatingsTable read_ratings_csv(std::istream& in);

struct ZScoreResult {
  RatingsTable table;
  std::vector<std::string> dropped;  // raters with fewer than two distinct scores
};

// Per-rater (x - mean) / std with the population standard deviation.
ZScoreResult zscore_raters(const RatingsTable& table);

struct FilterResult {
  RatingsTable table;
  std::vector<std::string> dropped;
  std::vector<std::string> uncheckable;  // kept: never shared enough items
};

// Drops raters whose best Spearman correlation with any co-rater (over at
// least `min_shared` shared items) is below `min_corr`.
FilterResult filter_raters(const RatingsTable& table, double min_corr = 0.2,
                           std::size_t min_shared = 3);

// Mean non-N/A score per item; items rated only N/A get 0.
std::map<std::string, double> item_means(const RatingsTable& table);

// Standardize to zero mean / unit variance, then clamp to [-2, 2].
std::vector<double> clip_standardize(std::span<const double> values);

// 1-based ranks, ties sharing the average rank.
std::vector<double> average_ranks(std::span<const double> values);
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

// Two-sided permutation test on |spearman|, (hits + 1) / (permutations + 1).
double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           std::size_t permutations, std::uint64_t seed);

struct WinLoseTie {
  double win = 0.0;
  double lose = 0.0;
  double tie = 0.0;
};

// Percentages over the shared items of how often `a` scores above, below or
// equal to `b`.
WinLoseTie pairwise_compare(const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b);

}  // namespace punforge
