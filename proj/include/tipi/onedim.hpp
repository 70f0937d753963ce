#ifndef TIPI_ONEDIM_HPP
#define TIPI_ONEDIM_HPP

#include "tipi/common.hpp"

namespace tipi {

// Scalar loop in the vanishing-noise limit. The parameter dynamics is the
// exact gradient of 1/2 log(1 + L^2) with L = C g'(C s + h), g = tanh:
//
//   s_next = g(C s + h)
//   C_next = C + eps * gamma * (1/(2C) - s * a)
//   h_next = h - eps * gamma * s_next
//   gamma  = 2 L^2 / (1 + L^2)
//
// These updates are independent of the white-noise amplitude, so the closed
// loop becomes a fully deterministic state+parameter system.
struct OnedimResult {
  double s_next;
  double c_next;
  double h_next;
  double tipi; // 1/2 log(1 + L^2) at the pre-update parameters
};

OnedimResult onedim_step(double s, double c, double h, double epsilon);

// Same parameter rule driven by a measured next state (decentralized control
// of a physical plant, where s_now generally differs from the commanded a).
struct OnedimUpdate {
  double c_next;
  double h_next;
  double action; // a = tanh(c*s_prev + h), the action that was applied
  double tipi;
  double gamma;
};

OnedimUpdate onedim_param_update(double s_prev, double s_now, double c,
                                 double h, double epsilon, double alpha = 1.0,
                                 bool fixed_c = false);

} // namespace tipi

#endif
