#ifndef TIPI_ANALYSIS_POTENTIAL_HPP
#define TIPI_ANALYSIS_POTENTIAL_HPP

namespace tipi::analysis {

// Potential of the scalar loop in postsynaptic coordinates z = C s + h:
//   U(z) = -C log cosh(z) - h z + z^2 / 2,
// so the map increment z_{t+1} - z_t equals -dU/dz = C tanh(z) + h - z.
double hysteresis_potential(double z, double c, double h);

// Bias magnitude at which the saddle-node bifurcation occurs for feedback
// strength C > 1: from the tangency condition C g'(z*) = 1,
//   tanh(z*) = sqrt(1 - 1/C),  h_c = C tanh(z*) - z*,
// the right potential well vanishes at h = -h_c. Throws for C <= 1 (the loop
// is monostable, no bifurcation).
double saddle_node_threshold(double c);

} // namespace tipi::analysis

#endif
