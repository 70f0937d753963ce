#ifndef TIPI_ACTIVATION_HPP
#define TIPI_ACTIVATION_HPP

#include <functional>
#include <string>

#include "tipi/common.hpp"

namespace tipi {

// Neuron activation g with its first two derivatives supplied in closed form;
// the parameter dynamics needs g''/(g' g) exactly, so no numerical
// differentiation happens in the control loop.
//
// gamma_prefactor is -g''/(g' g). For tanh the pole at g=0 cancels
// algebraically (g'' = -2 g g' gives a constant prefactor of 2), which is why
// it is carried as a separate callable rather than recomputed from the ratio.
struct Activation {
  std::string name;
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> ddg;
  // Optional closed-form -g''/(g' g); empty means "derive from the ratio".
  std::function<double(double)> prefactor;

  static Activation make_tanh();
  static Activation custom(std::function<double(double)> g,
                           std::function<double(double)> dg,
                           std::function<double(double)> ddg,
                           std::function<double(double)> prefactor = nullptr);

  // -g''(z)/(g'(z) g(z)), throws NumericError at a genuine singularity
  // (g(z)=0 or g'(z)=0 with g''(z) != 0 and no closed form supplied).
  double gamma_prefactor(double z) const;

  VectorXd apply(const VectorXd& z) const;
  VectorXd apply_dg(const VectorXd& z) const;
};

} // namespace tipi

#endif
