#pragma once

#include <cstddef>
#include <vector>

namespace ccgevo {

inline constexpr std::size_t kExactRankSumLimit = 20;
inline constexpr double kSignificanceLevel = 0.05;

struct RankSumResult {
  double rankSumA = 0.0;  // sum of midranks of sample A in the pooled sample
  double u = 0.0;         // Mann-Whitney U of sample A
  double pValue = 1.0;    // two-sided
  bool exact = false;
};

/// Two-sided Wilcoxon rank-sum test. Exact (enumeration of the midrank
/// distribution) when the pooled size is at most kExactRankSumLimit,
/// otherwise the normal approximation with tie and continuity correction.
/// Throws InvalidArgument for an empty sample.
RankSumResult ranksum_test(const std::vector<double>& a, const std::vector<double>& b);

/// Midranks (1-based, ties averaged) of a sample.
std::vector<double> midranks(const std::vector<double>& values);

}  // namespace ccgevo
