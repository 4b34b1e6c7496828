#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccgevo/analysis/ranksum.hpp"
#include "ccgevo/coevolution.hpp"

namespace ccgevo {

/// Aggregated results for one (agent, agent, deck, deck) combination.
struct TensorCell {
  std::uint64_t agentA = 0;
  std::uint64_t agentB = 0;
  std::size_t deckA = 0;
  std::size_t deckB = 0;
  std::int64_t games = 0;
  std::int64_t winsA = 0;
  std::int64_t winsB = 0;

  std::int64_t draws() const noexcept { return games - winsA - winsB; }
  friend bool operator==(const TensorCell&, const TensorCell&) = default;
};

/// An explicit set of played games, grouped by participants and decks.
struct MatchTensor {
  std::vector<std::string> deckNames;
  std::vector<TensorCell> cells;

  std::int64_t total_games() const noexcept;
  friend bool operator==(const MatchTensor&, const MatchTensor&) = default;
};

/// Converts an evaluation ledger into a tensor over genome ids.
MatchTensor tensor_from_ledger(const FitnessLedger& ledger, const std::vector<std::string>& deckNames);

struct WinrateMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::int64_t>> wins;   // wins[r][c]: games won by deck r against deck c
  std::vector<std::vector<std::int64_t>> games;  // games played by deck r against deck c

  bool has(std::size_t r, std::size_t c) const { return games.at(r).at(c) > 0; }
  /// Percentage in [0, 100]; nullopt for a pairing with no games.
  std::optional<double> cell(std::size_t r, std::size_t c) const;
  /// Like cell(), but throws EmptyCell instead of returning nullopt.
  double percent(std::size_t r, std::size_t c) const;
  /// Row deck wins against column deck; absent cells are left empty.
  std::string to_csv() const;
};

/// Every game is counted from the point of view of both participants. When
/// `perspective` is given, only participants whose id is in it contribute a
/// row, matching a table of "victories of these individuals by deck".
/// Draws count as games, never as wins.
WinrateMatrix winrate_matrix(const MatchTensor& tensor,
                             const std::vector<std::uint64_t>* perspective = nullptr);

struct WeightSummary {
  std::string label;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Linear-interpolation quantile of a sample (the default of most
/// statistics packages). Throws InvalidArgument on an empty sample.
double quantile(std::vector<double> sample, double p);

/// Five-number summary per weight over all genomes supplied.
std::vector<WeightSummary> export_weight_distributions(const std::vector<Genome>& genomes);
std::string weight_summary_csv(const std::vector<WeightSummary>& rows);
/// Whitespace-separated columns "index label min q1 median q3 max" for a
/// candlestick plot.
std::string weight_summary_gnuplot(const std::vector<WeightSummary>& rows);

enum class ComparisonMode {
  VersusAny,   // group members on deckA against anyone in the pool on deckB
  HeadToHead,  // group G on deckA against group G' on deckB, and vice versa
};

struct GroupComparison {
  int groupA = 0;
  int groupB = 0;
  std::size_t deckA = 0;
  std::size_t deckB = 0;
  std::size_t sizeA = 0;
  std::size_t sizeB = 0;
  double medianA = 0.0;
  double medianB = 0.0;
  RankSumResult test;
  bool significant = false;
};

/// Rank-sum grid over every group pair (groupA < groupB) and ordered deck
/// pair. The samples are per-agent win fractions. `groups` maps agent id to
/// group label; agents without a group are opponents only. Agents with no
/// games in a setting are left out of that sample; settings where either
/// sample ends up empty are skipped.
std::vector<GroupComparison> compare_groups(const MatchTensor& tensor,
                                            const std::vector<std::pair<std::uint64_t, int>>& groups,
                                            ComparisonMode mode, double alpha = kSignificanceLevel);
std::string comparisons_csv(const std::vector<GroupComparison>& rows,
                            const std::vector<std::string>& deckNames);

}  // namespace ccgevo
