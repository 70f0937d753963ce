#include "tipi/analysis/behavior.hpp"

#include <cmath>

#include "tipi/analysis/cluster.hpp"
#include "tipi/analysis/pca.hpp"

namespace tipi::analysis {

BehaviorLog::BehaviorLog(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  require(!columns_.empty(), "BehaviorLog: need at least one column");
}

void BehaviorLog::append(const std::vector<double>& row) {
  require(row.size() == columns_.size(), "BehaviorLog: row arity mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

double BehaviorLog::at(std::size_t row, std::size_t col) const {
  require(row < rows_ && col < columns_.size(), "BehaviorLog: out of range");
  return data_[row * columns_.size() + col];
}

int BehaviorLog::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return static_cast<int>(i);
  return -1;
}

bool BehaviorLog::has_column(const std::string& name) const {
  return column_index(name) >= 0;
}

VectorXd BehaviorLog::column(const std::string& name) const {
  const int idx = column_index(name);
  require(idx >= 0, "BehaviorLog: no column named '" + name + "'");
  VectorXd v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, idx);
  return v;
}

MatrixXd BehaviorLog::columns_with_prefix(const std::string& prefix) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].rfind(prefix, 0) == 0) idx.push_back(i);
  require(!idx.empty(), "BehaviorLog: no columns with prefix '" + prefix + "'");
  MatrixXd m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m(r, c) = at(r, idx[c]);
  return m;
}

std::vector<DimensionCurvePoint> dimension_curve(
    const MatrixXd& series, const std::vector<int>& chunk_lengths,
    double ratio) {
  std::vector<DimensionCurvePoint> out;
  for (int len : chunk_lengths) {
    require(len >= 2, "dimension_curve: chunk length must be >= 2");
    const int n_chunks = static_cast<int>(series.rows()) / len;
    require(n_chunks >= 3,
            "dimension_curve: series too short for >= 3 chunks of length " +
                std::to_string(len));
    VectorXd dims(n_chunks);
    for (int c = 0; c < n_chunks; ++c)
      dims[c] = effective_dimension(series.middleRows(c * len, len), ratio);
    const double mean = dims.mean();
    const double var = n_chunks > 1
                           ? (dims.array() - mean).square().sum() / (n_chunks - 1)
                           : 0.0;
    out.push_back({len, mean, std::sqrt(var), n_chunks});
  }
  return out;
}

MatrixXd overlap_matrix(const MatrixXd& series, int chunk_length,
                        int n_components) {
  const int n_chunks = static_cast<int>(series.rows()) / chunk_length;
  require(n_chunks >= 2, "overlap_matrix: need at least 2 chunks");
  MatrixXd d = MatrixXd::Zero(n_chunks, n_chunks);
  for (int i = 0; i < n_chunks; ++i)
    for (int j = i + 1; j < n_chunks; ++j) {
      const double v = chunk_overlap(
          series.middleRows(i * chunk_length, chunk_length),
          series.middleRows(j * chunk_length, chunk_length), n_components);
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

VectorXd mean_abs_columns(const BehaviorLog& log, const std::string& prefix) {
  const MatrixXd m = log.columns_with_prefix(prefix);
  require(m.rows() > 0, "mean_abs_columns: empty log");
  return m.cwiseAbs().colwise().mean().transpose();
}

double mean_param_distance(const BehaviorLog& a, const BehaviorLog& b) {
  const VectorXd ca = mean_abs_columns(a, "C");
  const VectorXd cb = mean_abs_columns(b, "C");
  require(ca.size() == cb.size(),
          "mean_param_distance: runs log different parameter counts");
  return param_distance(ca.transpose(), cb.transpose());
}

} // namespace tipi::analysis
