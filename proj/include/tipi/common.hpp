#ifndef TIPI_COMMON_HPP
#define TIPI_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tipi {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Contract violations (dimension mismatches, invalid rates, non-SPD inputs,
// ...) are reported as exceptions so the CLI can surface them with a message
// and a nonzero exit code.
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& msg) : std::invalid_argument(msg) {}
};

class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

inline void require_finite(const MatrixXd& m, const std::string& what) {
  if (!m.allFinite()) throw ContractError(what + ": non-finite entries");
}

inline void require_finite(const VectorXd& v, const std::string& what) {
  if (!v.allFinite()) throw ContractError(what + ": non-finite entries");
}

} // namespace tipi

#endif
