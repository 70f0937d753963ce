#ifndef TIPI_ANALYSIS_BEHAVIOR_HPP
#define TIPI_ANALYSIS_BEHAVIOR_HPP

#include <string>
#include <vector>

#include "tipi/common.hpp"

namespace tipi::analysis {

// Column-major record of a run: one row per logged step, fixed arity, with
// named columns (t, s..., a..., C..., h..., tipi, xi_norm, plant extras).
class BehaviorLog {
public:
  BehaviorLog() = default;
  explicit BehaviorLog(std::vector<std::string> columns);

  void append(const std::vector<double>& row);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_; }
  double at(std::size_t row, std::size_t col) const;

  int column_index(const std::string& name) const; // -1 if absent
  bool has_column(const std::string& name) const;

  // single named column as a vector
  VectorXd column(const std::string& name) const;
  // all columns whose name starts with the prefix (index order),
  // rows x channels
  MatrixXd columns_with_prefix(const std::string& prefix) const;

private:
  std::vector<std::string> columns_;
  std::vector<double> data_; // row-major
  std::size_t rows_ = 0;
};

struct DimensionCurvePoint {
  int chunk_length;
  double mean_dimension;
  double std_dimension;
  int n_chunks;
};

// Effective dimension of a multichannel series over chunk lengths: the
// series is split into disjoint chunks of each length (>= 3 chunks required)
// and the per-chunk dimensions are aggregated.
std::vector<DimensionCurvePoint> dimension_curve(
    const MatrixXd& series, const std::vector<int>& chunk_lengths,
    double ratio = 0.95);

// Pairwise chunk_overlap distances between consecutive disjoint chunks.
MatrixXd overlap_matrix(const MatrixXd& series, int chunk_length,
                        int n_components = 6);

// Distance between two runs' controller matrices for the environment
// clustering: each run is summarized by the time average of |C| over its
// logged rows and the summaries are compared with param_distance. Averaging
// first suppresses the parameter wander of the nonstationary dynamics and
// leaves the attractor's signature.
double mean_param_distance(const BehaviorLog& a, const BehaviorLog& b);

// time average of |column| for every column with the given prefix
VectorXd mean_abs_columns(const BehaviorLog& log, const std::string& prefix);

} // namespace tipi::analysis

#endif
