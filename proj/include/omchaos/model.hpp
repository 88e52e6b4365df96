#pragma once

#include <array>

#include "omchaos/params.hpp"
#include "omchaos/types.hpp"

namespace omchaos {

// Dynamical state: intracavity field quadratures and the mechanical
// displacement/velocity pair.
struct State {
  double a_re = 0.0;
  double a_im = 0.0;
  double x = 0.0;
  double v = 0.0;

  double intensity() const { return a_re * a_re + a_im * a_im; }
  bool finite() const;
};

struct StateDerivative {
  double a_re = 0.0;
  double a_im = 0.0;
  double x = 0.0;
  double v = 0.0;
};

// Right-hand side of
//   da/dt = [i(delta + g0 x) - kappa/2] a + sqrt(kappa_ex) drive
//   dx/dt = omega_m v
//   dv/dt = -omega_m x - gamma_m v + g0 |a|^2 / omega_m + extra_force
// extra_force carries an injected stimulus; it is 0 for the autonomous model.
// Rejects non-finite state with a diagnostic naming the offending field.
StateDerivative derivatives(const State& s, const SystemParams& p, double t,
                            double extra_force = 0.0);

// Jacobian of the flow at s, row-major 4x4 over (a_re, a_im, x, v).
std::array<double, 16> jacobian(const State& s, const SystemParams& p);

}  // namespace omchaos
