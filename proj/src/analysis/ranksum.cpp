#include "ccgevo/analysis/ranksum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "ccgevo/error.hpp"

namespace ccgevo {

std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Exact two-sided p-value. Midranks are doubled so every rank is an integer
// and the null distribution of the rank sum can be counted exactly.
double exact_p(const std::vector<double>& ranks, std::size_t na, double rankSumA) {
  const std::size_t n = ranks.size();
  std::vector<int> r2(n);
  for (std::size_t i = 0; i < n; ++i) r2[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
  const int total = std::accumulate(r2.begin(), r2.end(), 0);

  // ways[m][s]: subsets of size m whose doubled ranks sum to s.
  std::vector<std::vector<std::uint64_t>> ways(na + 1, std::vector<std::uint64_t>(total + 1, 0));
  ways[0][0] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = std::min(na, i + 1); m >= 1; --m)
      for (int s = total; s >= r2[i]; --s) ways[m][s] += ways[m - 1][s - r2[i]];

  const long expected2 = static_cast<long>(na) * static_cast<long>(n + 1);
  const long observed = std::labs(std::lround(2.0 * rankSumA) - expected2);
  std::uint64_t extreme = 0, all = 0;
  for (int s = 0; s <= total; ++s) {
    all += ways[na][s];
    if (std::labs(s - expected2) >= observed) extreme += ways[na][s];
  }
  return std::min(1.0, static_cast<double>(extreme) / static_cast<double>(all));
}

double normal_p(const std::vector<double>& pooled, std::size_t na, std::size_t nb, double u) {
  const double n = static_cast<double>(na + nb);
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double mean = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;
  const double z = std::max(0.0, std::fabs(u - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace

RankSumResult ranksum_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::InvalidArgument, "rank-sum test needs two non-empty samples");
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double v : pooled)
    if (std::isnan(v)) fail(ErrorCode::InvalidArgument, "rank-sum sample contains NaN");
  const auto ranks = midranks(pooled);

  RankSumResult r;
  r.rankSumA = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
  const double na = static_cast<double>(a.size());
  r.u = r.rankSumA - na * (na + 1.0) / 2.0;
  r.exact = pooled.size() <= kExactRankSumLimit;
  r.pValue = r.exact ? exact_p(ranks, a.size(), r.rankSumA) : normal_p(pooled, a.size(), b.size(), r.u);
  return r;
}

}  // namespace ccgevo
