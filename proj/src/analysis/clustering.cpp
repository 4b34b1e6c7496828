#include "ccgevo/analysis/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "ccgevo/error.hpp"

namespace ccgevo {

Matrix euclidean_distance_matrix(const std::vector<std::vector<double>>& points,
                                 std::size_t expectedDim) {
  const std::size_t n = points.size();
  if (n > 0) {
    const std::size_t dim = expectedDim ? expectedDim : points[0].size();
    for (std::size_t i = 0; i < n; ++i)
      if (points[i].size() != dim)
        fail(ErrorCode::DimensionMismatch, "point " + std::to_string(i) + " has " +
                                               std::to_string(points[i].size()) +
                                               " coordinates, expected " + std::to_string(dim));
  }
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        const double diff = points[i][k] - points[j][k];
        sum += diff * diff;
      }
      d[i][j] = d[j][i] = std::sqrt(sum);
    }
  return d;
}

namespace {

void check_square(const Matrix& d) {
  for (const auto& row : d)
    if (row.size() != d.size()) fail(ErrorCode::DimensionMismatch, "distance matrix is not square");
}

// Union-find labels after applying the first `count` merges.
std::vector<std::size_t> roots_after(const Dendrogram& tree, std::size_t count) {
  const std::size_t n = tree.leaves;
  std::vector<std::size_t> parent(n + tree.merges.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < count; ++k) {
    parent[tree.merges[k].left] = n + k;
    parent[tree.merges[k].right] = n + k;
  }
  std::vector<std::size_t> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = find(i);
  return root;
}

nlohmann::json node_json(const Dendrogram& tree, std::size_t id) {
  if (id < tree.leaves) return {{"leaf", id}};
  const Merge& m = tree.merges[id - tree.leaves];
  return {{"id", id},
          {"height", m.height},
          {"size", m.size},
          {"left", node_json(tree, m.left)},
          {"right", node_json(tree, m.right)}};
}

}  // namespace

std::vector<int> Dendrogram::cut(std::size_t k) const {
  if (k < 1 || k > leaves) fail(ErrorCode::InvalidArgument, "cannot cut into " + std::to_string(k) + " clusters");
  const auto root = roots_after(*this, leaves - k);
  std::vector<int> labels(leaves, -1);
  std::vector<std::pair<std::size_t, int>> seen;
  for (std::size_t i = 0; i < leaves; ++i) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == root[i]; });
    if (it == seen.end()) {
      seen.emplace_back(root[i], static_cast<int>(seen.size()));
      labels[i] = seen.back().second;
    } else {
      labels[i] = it->second;
    }
  }
  return labels;
}

std::string Dendrogram::to_json() const {
  nlohmann::json merges = nlohmann::json::array();
  for (std::size_t k = 0; k < this->merges.size(); ++k) {
    const Merge& m = this->merges[k];
    merges.push_back({{"id", leaves + k}, {"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  }
  nlohmann::json doc = {{"leaves", leaves}, {"merges", merges}};
  if (!this->merges.empty()) doc["root"] = node_json(*this, leaves + this->merges.size() - 1);
  return doc.dump(2) + "\n";
}

Dendrogram ward_clustering(const Matrix& distances) {
  check_square(distances);
  const std::size_t n = distances.size();
  if (n < 2) fail(ErrorCode::InvalidArgument, "clustering needs at least 2 points");

  // Squared Ward distances between active clusters, indexed by slot; slot i
  // starts as leaf i and is reused by the merged cluster.
  Matrix d2(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d2[i][j] = distances[i][j] * distances[i][j];
  std::vector<std::size_t> nodeId(n), size(n, 1);
  std::iota(nodeId.begin(), nodeId.end(), std::size_t{0});
  std::vector<bool> active(n, true);

  Dendrogram tree;
  tree.leaves = n;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> bestIds{};
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const std::pair<std::size_t, std::size_t> ids = std::minmax(nodeId[i], nodeId[j]);
        if (d2[i][j] < best || (d2[i][j] == best && ids < bestIds)) {
          best = d2[i][j];
          bestIds = ids;
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(size[bi]), nj = static_cast<double>(size[bj]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double nk = static_cast<double>(size[k]);
      const double v = ((ni + nk) * d2[bi][k] + (nj + nk) * d2[bj][k] - nk * best) / (ni + nj + nk);
      d2[bi][k] = d2[k][bi] = std::max(v, 0.0);
    }
    tree.merges.push_back({bestIds.first, bestIds.second, std::sqrt(best), size[bi] + size[bj]});
    nodeId[bi] = n + step;
    size[bi] += size[bj];
    active[bj] = false;
  }
  return tree;
}

std::vector<double> silhouette_values(const Matrix& distances, const std::vector<int>& labels) {
  check_square(distances);
  const std::size_t n = distances.size();
  if (labels.size() != n) fail(ErrorCode::DimensionMismatch, "one label per point is required");
  const int k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> counts(k, 0.0);
  for (int l : labels) {
    if (l < 0) fail(ErrorCode::InvalidArgument, "cluster labels must be non-negative");
    counts[l] += 1.0;
  }
  std::vector<double> s(n, 0.0);
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[labels[i]] <= 1.0) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) sums[labels[j]] += distances[i][j];
    const double a = sums[labels[i]] / (counts[labels[i]] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c)
      if (c != labels[i] && counts[c] > 0.0) b = std::min(b, sums[c] / counts[c]);
    if (!std::isfinite(b)) continue;  // only one cluster
    const double scale = std::max(a, b);
    s[i] = scale > 0.0 ? (b - a) / scale : 0.0;
  }
  return s;
}

double mean_silhouette(const Matrix& distances, const std::vector<int>& labels) {
  const auto s = silhouette_values(distances, labels);
  if (s.empty()) return 0.0;
  return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

Partition silhouette_partition(const Dendrogram& tree, const Matrix& distances, std::size_t kMin,
                               std::size_t kMax) {
  const std::size_t n = tree.leaves;
  if (distances.size() != n) fail(ErrorCode::DimensionMismatch, "tree and distance matrix disagree on size");
  if (kMin < 2 || kMax + 1 > n || kMin > kMax)
    fail(ErrorCode::DegenerateCluster, "k range [" + std::to_string(kMin) + ", " + std::to_string(kMax) +
                                           "] is outside [2, " + std::to_string(n > 0 ? n - 1 : 0) + "]");
  Partition best;
  best.meanSilhouette = -std::numeric_limits<double>::infinity();
  for (std::size_t k = kMin; k <= kMax; ++k) {
    auto labels = tree.cut(k);
    const double score = mean_silhouette(distances, labels);
    best.scores.emplace_back(k, score);
    if (score > best.meanSilhouette) {
      best.k = k;
      best.labels = std::move(labels);
      best.meanSilhouette = score;
    }
  }
  return best;
}

}  // namespace ccgevo
