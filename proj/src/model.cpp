#include "omchaos/model.hpp"

#include <cmath>

namespace omchaos {

bool State::finite() const {
  return std::isfinite(a_re) && std::isfinite(a_im) && std::isfinite(x) && std::isfinite(v);
}

StateDerivative derivatives(const State& s, const SystemParams& p, double /*t*/,
                            double extra_force) {
  if (!std::isfinite(s.a_re)) throw PreconditionError("State.a_re is not finite");
  if (!std::isfinite(s.a_im)) throw PreconditionError("State.a_im is not finite");
  if (!std::isfinite(s.x)) throw PreconditionError("State.x is not finite");
  if (!std::isfinite(s.v)) throw PreconditionError("State.v is not finite");

  const double det = p.delta + p.g0 * s.x;  // displacement-shifted detuning
  const double half_kappa = 0.5 * p.kappa;
  const double in_field = std::sqrt(p.kappa_ex) * p.drive_amplitude;

  StateDerivative d;
  d.a_re = -half_kappa * s.a_re - det * s.a_im + in_field;
  d.a_im = det * s.a_re - half_kappa * s.a_im;
  d.x = p.omega_m * s.v;
  d.v = -p.omega_m * s.x - p.gamma_m * s.v + p.g0 * s.intensity() / p.omega_m + extra_force;
  return d;
}

std::array<double, 16> jacobian(const State& s, const SystemParams& p) {
  const double det = p.delta + p.g0 * s.x;
  const double half_kappa = 0.5 * p.kappa;
  return {
      -half_kappa, -det,        -p.g0 * s.a_im, 0.0,        //
      det,         -half_kappa, p.g0 * s.a_re,  0.0,        //
      0.0,         0.0,         0.0,            p.omega_m,  //
      2.0 * p.g0 * s.a_re / p.omega_m, 2.0 * p.g0 * s.a_im / p.omega_m, -p.omega_m, -p.gamma_m,
  };
}

}  // namespace omchaos
