#include "tipi/analysis/potential.hpp"

#include <cmath>

#include "tipi/common.hpp"

namespace tipi::analysis {

double hysteresis_potential(double z, double c, double h) {
  // log(cosh z) written to stay finite for large |z|
  const double lc = std::abs(z) + std::log1p(std::exp(-2.0 * std::abs(z))) -
                    std::log(2.0);
  return -c * lc - h * z + 0.5 * z * z;
}

double saddle_node_threshold(double c) {
  require(c > 1.0, "saddle_node_threshold: no bistability for C <= 1");
  const double t = std::sqrt(1.0 - 1.0 / c); // tanh(z*) at tangency
  const double z_star = std::atanh(t);
  return c * t - z_star;
}

} // namespace tipi::analysis
