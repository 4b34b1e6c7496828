#include "ccgevo/analysis/reports.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "ccgevo/csv.hpp"
#include "ccgevo/error.hpp"

namespace ccgevo {

std::int64_t MatchTensor::total_games() const noexcept {
  std::int64_t total = 0;
  for (const auto& c : cells) total += c.games;
  return total;
}

MatchTensor tensor_from_ledger(const FitnessLedger& ledger, const std::vector<std::string>& deckNames) {
  if (deckNames.size() != ledger.deckCount)
    fail(ErrorCode::DimensionMismatch, "deck names do not match the ledger's deck count");
  MatchTensor t;
  t.deckNames = deckNames;
  const std::size_t n = ledger.size(), d = ledger.deckCount;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t di = 0; di < d; ++di)
        for (std::size_t dj = 0; dj < d; ++dj)
          t.cells.push_back({ledger.ids[i], ledger.ids[j], di, dj, ledger.gamesPerCell,
                             ledger.cell(i, j, di, dj), ledger.cell(j, i, dj, di)});
  return t;
}

std::optional<double> WinrateMatrix::cell(std::size_t r, std::size_t c) const {
  if (!has(r, c)) return std::nullopt;
  return 100.0 * static_cast<double>(wins[r][c]) / static_cast<double>(games[r][c]);
}

double WinrateMatrix::percent(std::size_t r, std::size_t c) const {
  if (auto v = cell(r, c)) return *v;
  fail(ErrorCode::EmptyCell, "no games between " + labels.at(r) + " and " + labels.at(c));
}

std::string WinrateMatrix::to_csv() const {
  std::ostringstream os;
  os << "deck";
  for (const auto& l : labels) os << ',' << l;
  os << '\n';
  for (std::size_t r = 0; r < labels.size(); ++r) {
    os << labels[r];
    for (std::size_t c = 0; c < labels.size(); ++c) {
      os << ',';
      if (auto v = cell(r, c)) os << format_double(*v);
    }
    os << '\n';
  }
  return os.str();
}

WinrateMatrix winrate_matrix(const MatchTensor& tensor, const std::vector<std::uint64_t>* perspective) {
  const std::size_t d = tensor.deckNames.size();
  WinrateMatrix m;
  m.labels = tensor.deckNames;
  m.wins.assign(d, std::vector<std::int64_t>(d, 0));
  m.games.assign(d, std::vector<std::int64_t>(d, 0));
  auto counted = [&](std::uint64_t id) {
    return !perspective || std::find(perspective->begin(), perspective->end(), id) != perspective->end();
  };
  for (const auto& c : tensor.cells) {
    if (c.deckA >= d || c.deckB >= d) fail(ErrorCode::DimensionMismatch, "tensor cell names an unknown deck");
    if (c.games < 0 || c.winsA < 0 || c.winsB < 0 || c.winsA + c.winsB > c.games)
      fail(ErrorCode::InvalidArgument, "tensor cell has inconsistent counts");
    if (counted(c.agentA)) {
      m.games[c.deckA][c.deckB] += c.games;
      m.wins[c.deckA][c.deckB] += c.winsA;
    }
    if (counted(c.agentB)) {
      m.games[c.deckB][c.deckA] += c.games;
      m.wins[c.deckB][c.deckA] += c.winsB;
    }
  }
  return m;
}

double quantile(std::vector<double> sample, double p) {
  if (sample.empty()) fail(ErrorCode::InvalidArgument, "quantile of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double h = (static_cast<double>(sample.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

std::vector<WeightSummary> export_weight_distributions(const std::vector<Genome>& genomes) {
  if (genomes.empty()) fail(ErrorCode::InvalidArgument, "no genomes to summarize");
  std::vector<WeightSummary> rows;
  std::vector<double> column(genomes.size());
  for (std::size_t w = 0; w < kWeightCount; ++w) {
    for (std::size_t g = 0; g < genomes.size(); ++g) column[g] = genomes[g].weights[w];
    rows.push_back({std::string(weight_label(w)), quantile(column, 0.0), quantile(column, 0.25),
                    quantile(column, 0.5), quantile(column, 0.75), quantile(column, 1.0)});
  }
  return rows;
}

std::string weight_summary_csv(const std::vector<WeightSummary>& rows) {
  std::ostringstream os;
  os << "weight,min,q1,median,q3,max\n";
  for (const auto& r : rows)
    os << r.label << ',' << format_double(r.min) << ',' << format_double(r.q1) << ','
       << format_double(r.median) << ',' << format_double(r.q3) << ',' << format_double(r.max) << '\n';
  return os.str();
}

std::string weight_summary_gnuplot(const std::vector<WeightSummary>& rows) {
  std::ostringstream os;
  os << "# index label min q1 median q3 max\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << i + 1 << ' ' << r.label << ' ' << format_double(r.min) << ' ' << format_double(r.q1) << ' '
       << format_double(r.median) << ' ' << format_double(r.q3) << ' ' << format_double(r.max) << '\n';
  }
  return os.str();
}

namespace {

constexpr int kNoGroup = -1;

// (agent, own deck, opponent deck, opponent group) -> (wins, games)
using Tally = std::map<std::tuple<std::uint64_t, std::size_t, std::size_t, int>, std::pair<std::int64_t, std::int64_t>>;

double median_of(const std::vector<double>& v) { return v.empty() ? 0.0 : quantile(v, 0.5); }

}  // namespace

std::vector<GroupComparison> compare_groups(const MatchTensor& tensor,
                                            const std::vector<std::pair<std::uint64_t, int>>& groups,
                                            ComparisonMode mode, double alpha) {
  std::map<std::uint64_t, int> groupOf;
  for (auto [id, g] : groups) {
    if (g < 0) fail(ErrorCode::InvalidArgument, "group labels must be non-negative");
    if (!groupOf.emplace(id, g).second) fail(ErrorCode::InvalidArgument, "agent " + std::to_string(id) + " is in two groups");
  }
  auto group = [&](std::uint64_t id) {
    auto it = groupOf.find(id);
    return it == groupOf.end() ? kNoGroup : it->second;
  };

  Tally tally;
  for (const auto& c : tensor.cells) {
    auto& a = tally[{c.agentA, c.deckA, c.deckB, group(c.agentB)}];
    a.first += c.winsA;
    a.second += c.games;
    auto& b = tally[{c.agentB, c.deckB, c.deckA, group(c.agentA)}];
    b.first += c.winsB;
    b.second += c.games;
  }

  std::map<int, std::vector<std::uint64_t>> members;
  for (auto [id, g] : groupOf) members[g].push_back(id);

  // Win fractions of `from` on `own` against opponents on `opp` in group
  // `against` (kNoGroup here means any opponent at all).
  auto sample = [&](int from, std::size_t own, std::size_t opp, std::optional<int> against) {
    std::vector<double> out;
    for (std::uint64_t id : members[from]) {
      std::int64_t wins = 0, games = 0;
      for (auto it = tally.lower_bound({id, own, opp, kNoGroup - 1});
           it != tally.end() && std::get<0>(it->first) == id && std::get<1>(it->first) == own &&
           std::get<2>(it->first) == opp;
           ++it) {
        if (against && std::get<3>(it->first) != *against) continue;
        wins += it->second.first;
        games += it->second.second;
      }
      if (games > 0) out.push_back(static_cast<double>(wins) / static_cast<double>(games));
    }
    return out;
  };

  std::vector<GroupComparison> rows;
  const std::size_t d = tensor.deckNames.size();
  for (auto ga = members.begin(); ga != members.end(); ++ga)
    for (auto gb = std::next(ga); gb != members.end(); ++gb)
      for (std::size_t d1 = 0; d1 < d; ++d1)
        for (std::size_t d2 = 0; d2 < d; ++d2) {
          const bool h2h = mode == ComparisonMode::HeadToHead;
          const auto x = sample(ga->first, d1, d2, h2h ? std::optional<int>(gb->first) : std::nullopt);
          const auto y = sample(gb->first, d1, d2, h2h ? std::optional<int>(ga->first) : std::nullopt);
          if (x.empty() || y.empty()) continue;
          GroupComparison row;
          row.groupA = ga->first;
          row.groupB = gb->first;
          row.deckA = d1;
          row.deckB = d2;
          row.sizeA = x.size();
          row.sizeB = y.size();
          row.medianA = median_of(x);
          row.medianB = median_of(y);
          row.test = ranksum_test(x, y);
          row.significant = row.test.pValue < alpha;
          rows.push_back(row);
        }
  return rows;
}

std::string comparisons_csv(const std::vector<GroupComparison>& rows, const std::vector<std::string>& deckNames) {
  std::ostringstream os;
  os << "group_a,group_b,deck_a,deck_b,n_a,n_b,median_a,median_b,rank_sum_a,u,p_value,exact,significant\n";
  for (const auto& r : rows)
    os << r.groupA << ',' << r.groupB << ',' << deckNames.at(r.deckA) << ',' << deckNames.at(r.deckB) << ','
       << r.sizeA << ',' << r.sizeB << ',' << format_double(r.medianA) << ',' << format_double(r.medianB) << ','
       << format_double(r.test.rankSumA) << ',' << format_double(r.test.u) << ','
       << format_double(r.test.pValue) << ',' << (r.test.exact ? 1 : 0) << ',' << (r.significant ? 1 : 0)
       << '\n';
  return os.str();
}

}  // namespace ccgevo
