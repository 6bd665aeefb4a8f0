#include "punforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "punforge/errors.hpp"

namespace punforge {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_std(std::span<const double> v, double mu) {
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

std::map<std::string, std::map<std::string, double>> by_rater(const RatingsTable& t) {
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& r : t.records) {
    out[r.rater];
    if (r.score) out[r.rater][r.item] = *r.score;
  }
  return out;
}

}  // namespace

RatingsTable read_ratings_csv(std::istream& in) {
  RatingsTable t;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(trim(cell));
    if (f.size() != 3) {
      throw FormatError("ratings line " + std::to_string(lineno) + ": expected 3 fields");
    }
    if (lineno == 1 && f[0] == "item_id") continue;
    Rating r{f[0], f[1], std::nullopt};
    if (f[2] != "NA") {
      try {
        std::size_t used = 0;
        r.score = std::stod(f[2], &used);
        if (used != f[2].size()) throw std::invalid_argument(f[2]);
      } catch (const std::exception&) {
        throw FormatError("ratings line " + std::to_string(lineno) + ": bad score '" + f[2] + "'");
      }
    }
    if (!seen.emplace(r.item, r.rater).second) {
      throw FormatError("ratings line " + std::to_string(lineno) + ": duplicate (item, rater)");
    }
    t.records.push_back(std::move(r));
  }
  return t;
}

ZScoreResult zscore_raters(const RatingsTable& table) {
  if (table.records.empty()) throw InvalidArgument("cannot z-score an empty ratings table");
  std::map<std::string, std::pair<double, double>> params;  // rater -> (mean, std)
  ZScoreResult out;
  for (const auto& [rater, scores] : by_rater(table)) {
    std::vector<double> v;
    for (const auto& [item, s] : scores) v.push_back(s);
    std::set<double> distinct(v.begin(), v.end());
    if (distinct.size() < 2) {
      out.dropped.push_back(rater);
      continue;
    }
    const double mu = mean(v);
    params[rater] = {mu, population_std(v, mu)};
  }
  for (const auto& r : table.records) {
    auto it = params.find(r.rater);
    if (it == params.end()) continue;
    Rating z = r;
    if (z.score) z.score = (*z.score - it->second.first) / it->second.second;
    out.table.records.push_back(std::move(z));
  }
  return out;
}

FilterResult filter_raters(const RatingsTable& table, double min_corr, std::size_t min_shared) {
  if (!(min_corr >= -1.0 && min_corr <= 1.0)) throw InvalidArgument("min_corr must be in [-1, 1]");
  const auto raters = by_rater(table);
  std::set<std::string> dropped;
  FilterResult out;
  for (const auto& [r, rs] : raters) {
    std::optional<double> best;
    for (const auto& [q, qs] : raters) {
      if (q == r) continue;
      std::vector<double> x, y;
      for (const auto& [item, s] : rs) {
        auto it = qs.find(item);
        if (it == qs.end()) continue;
        x.push_back(s);
        y.push_back(it->second);
      }
      if (x.size() < min_shared) continue;
      const auto constant = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
      };
      if (constant(x) || constant(y)) continue;
      const double rho = spearman(x, y);
      if (!best || rho > *best) best = rho;
    }
    if (!best) {
      out.uncheckable.push_back(r);
    } else if (*best < min_corr) {
      dropped.insert(r);
      out.dropped.push_back(r);
    }
  }
  for (const auto& rec : table.records) {
    if (!dropped.count(rec.rater)) out.table.records.push_back(rec);
  }
  return out;
}

std::map<std::string, double> item_means(const RatingsTable& table) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& r : table.records) {
    auto& a = acc[r.item];
    if (r.score) {
      a.first += *r.score;
      ++a.second;
    }
  }
  std::map<std::string, double> out;
  for (const auto& [item, a] : acc) {
    out[item] = a.second ? a.first / static_cast<double>(a.second) : 0.0;
  }
  return out;
}

std::vector<double> clip_standardize(std::span<const double> values) {
  if (values.size() < 2 ||
      std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    throw InvalidArgument("clip_standardize needs at least two distinct values");
  }
  const double mu = mean(values);
  const double sd = population_std(values, mu);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(std::clamp((v - mu) / sd, -2.0, 2.0));
  return out;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("correlation inputs differ in length");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw InvalidArgument("correlation of a constant input");
  return sxy / std::sqrt(sxx * syy);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman inputs differ in length");
  if (x.size() < 3) throw InvalidArgument("spearman needs at least 3 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           std::size_t permutations, std::uint64_t seed) {
  const double observed = std::abs(spearman(x, y));
  const auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t p = 0; p < permutations; ++p) {
    for (std::size_t i = ry.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(ry[i], ry[j]);
    }
    if (std::abs(pearson(rx, ry)) >= observed - 1e-12) ++hits;
  }
  return static_cast<double>(hits + 1) / static_cast<double>(permutations + 1);
}

WinLoseTie pairwise_compare(const std::map<std::string, double>& a,
                            const std::map<std::string, double>& b) {
  std::size_t win = 0, lose = 0, tie = 0;
  for (const auto& [item, sa] : a) {
    auto it = b.find(item);
    if (it == b.end()) continue;
    if (sa > it->second) {
      ++win;
    } else if (sa < it->second) {
      ++lose;
    } else {
      ++tie;
    }
  }
  const auto n = win + lose + tie;
  if (n == 0) throw InvalidArgument("pairwise comparison over disjoint item sets");
  const double scale = 100.0 / static_cast<double>(n);
  return {static_cast<double>(win) * scale, static_cast<double>(lose) * scale,
          static_cast<double>(tie) * scale};
}

}  // namespace punforge
