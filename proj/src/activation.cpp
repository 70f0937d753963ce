#include "tipi/activation.hpp"

#include <cmath>

namespace tipi {

Activation Activation::make_tanh() {
  Activation a;
  a.name = "tanh";
  a.g = [](double z) { return std::tanh(z); };
  a.dg = [](double z) {
    const double t = std::tanh(z);
    return 1.0 - t * t;
  };
  a.ddg = [](double z) {
    const double t = std::tanh(z);
    return -2.0 * t * (1.0 - t * t);
  };
  a.prefactor = [](double) { return 2.0; };
  return a;
}

Activation Activation::custom(std::function<double(double)> g,
                              std::function<double(double)> dg,
                              std::function<double(double)> ddg,
                              std::function<double(double)> prefactor) {
  Activation a;
  a.name = "custom";
  a.g = std::move(g);
  a.dg = std::move(dg);
  a.ddg = std::move(ddg);
  a.prefactor = std::move(prefactor);
  return a;
}

double Activation::gamma_prefactor(double z) const {
  if (prefactor) return prefactor(z);
  const double gv = g(z);
  const double dgv = dg(z);
  const double ddgv = ddg(z);
  const double denom = dgv * gv;
  if (std::abs(denom) < 1e-300) {
    if (std::abs(ddgv) < 1e-300) return 0.0; // 0/0 with vanishing numerator
    throw NumericError("activation: -g''/(g' g) singular at z=" +
                       std::to_string(z) + " and no closed form supplied");
  }
  return -ddgv / denom;
}

VectorXd Activation::apply(const VectorXd& z) const {
  VectorXd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = g(z[i]);
  return out;
}

VectorXd Activation::apply_dg(const VectorXd& z) const {
  VectorXd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = dg(z[i]);
  return out;
}

} // namespace tipi
