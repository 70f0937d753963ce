#include "tipi/analysis/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tipi::analysis {

Pca pca(const MatrixXd& chunk) {
  require(chunk.rows() >= 2, "pca: need at least 2 samples");
  const Eigen::Index n = chunk.cols();
  const MatrixXd centered = chunk.rowwise() - chunk.colwise().mean();
  const MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(chunk.rows() - 1);

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
  require(es.info() == Eigen::Success, "pca: eigensolver failed");

  // Eigen returns ascending order; re-sort descending with index tie-break
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const VectorXd& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return ev[a] > ev[b]; });

  Pca out;
  out.eigenvalues.resize(n);
  out.components.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues[i] = std::max(0.0, ev[order[i]]);
    out.components.col(i) = es.eigenvectors().col(order[i]);
  }
  return out;
}

double effective_dimension(const MatrixXd& chunk, double ratio) {
  require(ratio > 0.0 && ratio < 1.0,
          "effective_dimension: ratio must lie in (0,1)");
  const Pca p = pca(chunk);
  const double total = p.eigenvalues.sum();
  if (total <= 0.0) return 0.0;

  double cum_prev = 0.0;
  for (Eigen::Index k = 0; k < p.eigenvalues.size(); ++k) {
    const double cum = cum_prev + p.eigenvalues[k] / total;
    if (cum >= ratio)
      return static_cast<double>(k) + (ratio - cum_prev) / (cum - cum_prev);
    cum_prev = cum;
  }
  // cumulative ratios end at 1 >= ratio, so we only get here on roundoff
  return static_cast<double>(p.eigenvalues.size());
}

double chunk_overlap(const MatrixXd& chunk_a, const MatrixXd& chunk_b,
                     int n_components) {
  require(n_components >= 1, "chunk_overlap: n_components must be >= 1");
  require(chunk_a.cols() == chunk_b.cols(),
          "chunk_overlap: chunks must share the channel count");
  require(chunk_a.rows() >= n_components && chunk_b.rows() >= n_components,
          "chunk_overlap: chunks must have at least n_components samples");

  const Pca pa = pca(chunk_a);
  const Pca pb = pca(chunk_b);
  const int nc = n_components;

  // numerical rank gate: treat components with negligible variance as absent
  auto live = [](const Pca& p, int i) {
    const double total = p.eigenvalues.sum();
    return i < p.eigenvalues.size() && total > 0.0 &&
           p.eigenvalues[i] > 1e-12 * total;
  };

  MatrixXd m = MatrixXd::Zero(nc, nc);
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      if (live(pa, i) && live(pb, j) && i < pa.components.cols() &&
          j < pb.components.cols())
        m(i, j) = std::abs(pa.components.col(i).dot(pb.components.col(j)));

  double row_sq = 0.0, col_sq = 0.0;
  for (int i = 0; i < nc; ++i) {
    row_sq += m.row(i).maxCoeff() * m.row(i).maxCoeff();
    col_sq += m.col(i).maxCoeff() * m.col(i).maxCoeff();
  }
  const double denom = 2.0 * std::sqrt(static_cast<double>(nc));
  const double sim =
      std::clamp((std::sqrt(row_sq) + std::sqrt(col_sq)) / denom, 0.0, 1.0);
  return 1.0 - sim;
}

} // namespace tipi::analysis
