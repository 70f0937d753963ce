#ifndef TIPI_ANALYSIS_CLUSTER_HPP
#define TIPI_ANALYSIS_CLUSTER_HPP

#include <string>
#include <vector>

#include "tipi/common.hpp"

namespace tipi::analysis {

// Squared norm of the difference of element-wise absolute values,
// sum_ij (|A_ij| - |B_ij|)^2. Sign-blind so that parameter matrices that
// differ only by inverted signs (same qualitative behavior) compare equal.
double param_distance(const MatrixXd& c1, const MatrixXd& c2);

enum class Linkage { average, single, complete };

// Agglomerative clustering result. Leaves are 0..n-1; the k-th merge creates
// cluster id n+k from the two listed children at the given height. Merge
// heights are non-decreasing for the provided linkages.
struct Dendrogram {
  struct Merge {
    int left;
    int right;
    double height;
  };
  int n_leaves = 0;
  std::vector<Merge> merges;
  std::vector<std::string> labels;
  Linkage linkage = Linkage::average;

  // newick-style parenthesized string with merge heights as branch lengths
  std::string to_newick() const;

  // cluster assignment (values 0..k-1, by leaf) after undoing the last k-1
  // merges; k = n_leaves returns singletons
  std::vector<int> cut(int k) const;
};

// Agglomerative clustering of a symmetric nonnegative distance matrix with
// zero diagonal. Ties are broken toward the lowest cluster index pair, so
// the result is deterministic.
Dendrogram hierarchical_cluster(const MatrixXd& distance,
                                Linkage linkage = Linkage::average,
                                std::vector<std::string> labels = {});

// true if two flat cluster assignments induce the same partition
bool same_partition(const std::vector<int>& a, const std::vector<int>& b);

} // namespace tipi::analysis

#endif
