#include "tipi/onedim.hpp"

#include <cmath>

namespace tipi {

OnedimUpdate onedim_param_update(double s_prev, double s_now, double c,
                                 double h, double epsilon, double alpha,
                                 bool fixed_c) {
  require(c != 0.0, "onedim: C must be nonzero (1/(2C) term)");
  require(std::isfinite(s_prev) && std::isfinite(s_now) && std::isfinite(c) &&
              std::isfinite(h),
          "onedim: non-finite input");
  OnedimUpdate u;
  const double z = c * s_prev + h;
  const double a = std::tanh(z);
  const double gp = 1.0 - a * a;
  const double L = c * gp;
  const double L2 = L * L;
  const double gamma = alpha * 2.0 * L2 / (1.0 + L2);
  u.action = a;
  u.gamma = gamma;
  u.tipi = 0.5 * std::log1p(L2);
  u.c_next = fixed_c ? c : c + epsilon * gamma * (1.0 / (2.0 * c) - s_prev * a);
  u.h_next = h - epsilon * gamma * s_now;
  return u;
}

OnedimResult onedim_step(double s, double c, double h, double epsilon) {
  // idealized loop: the next sensor value equals the action
  const double s_next = std::tanh(c * s + h);
  const OnedimUpdate u = onedim_param_update(s, s_next, c, h, epsilon);
  return OnedimResult{s_next, u.c_next, u.h_next, u.tipi};
}

} // namespace tipi
