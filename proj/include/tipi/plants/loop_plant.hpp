#ifndef TIPI_PLANTS_LOOP_PLANT_HPP
#define TIPI_PLANTS_LOOP_PLANT_HPP

#include "tipi/common.hpp"
#include "tipi/rng.hpp"

namespace tipi::plants {

// Idealized feedback world: the sensor reading is the previous action plus
// white Gaussian noise, s = a + lambda * xi. With lambda = 0 and a tanh
// controller the closed loop is exactly the scalar map
// s_{t+1} = tanh(C s_t + h).
class LoopPlant {
public:
  LoopPlant(Eigen::Index n, double lambda, std::uint64_t seed)
      : n_(n), lambda_(lambda), rng_(seed) {
    require(n >= 1, "LoopPlant: dimension must be >= 1");
    require(lambda >= 0.0, "LoopPlant: lambda must be >= 0");
  }

  Eigen::Index n_sensors() const { return n_; }
  Eigen::Index n_motors() const { return n_; }

  VectorXd step(const VectorXd& a) {
    require(a.size() == n_, "LoopPlant: action dimension mismatch");
    if (lambda_ == 0.0) return a;
    return a + lambda_ * rng_.gaussian_vector(n_);
  }

  double lambda() const { return lambda_; }

private:
  Eigen::Index n_;
  double lambda_;
  GaussianRng rng_;
};

} // namespace tipi::plants

#endif
