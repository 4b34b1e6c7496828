#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ccgevo {

using Matrix = std::vector<std::vector<double>>;

/// Pairwise Euclidean distances. All points must share one dimension, and that
/// dimension must equal `expectedDim` when it is non-zero (DimensionMismatch).
Matrix euclidean_distance_matrix(const std::vector<std::vector<double>>& points,
                                 std::size_t expectedDim = 0);

/// One agglomeration step. Node ids follow the usual linkage-matrix
/// convention: leaves are 0..n-1, the node created by merge k is n+k.
struct Merge {
  std::size_t left = 0;   // smaller node id
  std::size_t right = 0;  // larger node id
  double height = 0.0;
  std::size_t size = 0;   // leaves under the new node

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;  // n-1 merges, in order

  /// Flat cluster labels after undoing the last k-1 merges. Labels are
  /// 0..k-1, numbered by the smallest leaf in each cluster.
  std::vector<int> cut(std::size_t k) const;

  /// JSON with the flat merge list and the nested tree under "root".
  std::string to_json() const;
};

/// Ward linkage through Lance-Williams updates on squared distances. Heights
/// are reported on the distance scale: sqrt(2 * increase in within-cluster
/// sum of squares). Ties go to the pair with the smallest node ids.
/// Throws InvalidArgument for fewer than 2 points, DimensionMismatch for a
/// non-square matrix.
Dendrogram ward_clustering(const Matrix& distances);

/// Silhouette width of every point; singletons score 0.
std::vector<double> silhouette_values(const Matrix& distances, const std::vector<int>& labels);
double mean_silhouette(const Matrix& distances, const std::vector<int>& labels);

struct Partition {
  std::size_t k = 0;
  std::vector<int> labels;
  double meanSilhouette = 0.0;
  std::vector<std::pair<std::size_t, double>> scores;  // (k, mean width) for every k tried
};

/// Cuts the tree at every k in [kMin, kMax] and keeps the best mean
/// silhouette, ties going to the smaller k. The range must lie inside
/// [2, n-1]; otherwise DegenerateCluster.
Partition silhouette_partition(const Dendrogram& tree, const Matrix& distances, std::size_t kMin,
                               std::size_t kMax);

}  // namespace ccgevo
