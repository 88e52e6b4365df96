#pragma once

#include <cstdint>
#include <string>

#include "omchaos/types.hpp"

namespace omchaos {

// Physical and numerical constants of the single-mode optomechanical model.
// All rates are angular frequencies in rad/s, times in seconds. x and v are
// dimensionless (displacement in units of the static displacement scale).
struct SystemParams {
  double delta = 0.0;             // laser-cavity detuning
  double kappa = 1.135737e8;      // total optical amplitude decay rate
  double kappa_ex = 0.5678685e8;  // external coupling rate, 0 < kappa_ex <= kappa
  double omega_m = 1.350884e8;    // mechanical resonance, 2*pi*21.5 MHz
  double gamma_m = 5.873409e4;    // mechanical damping, omega_m / 2300
  double g0 = 0.0;                // optical frequency pull per unit displacement
  double drive_amplitude = 0.0;   // input drive |a_in|
  double noise_sigma = 0.0;       // white-force intensity on v (0 disables)

  double dt = 1.0e-9;             // integrator step
  double t_transient = 50.0e-6;   // discarded lead-in
  double t_record = 200.0e-6;     // recorded span
  int decimation = 0;             // recording stride; 0 = auto (fs >= 20 * omega_m/2pi)

  // Throws PreconditionError naming the offending field.
  void validate() const;

  // Auto decimation: largest stride keeping fs at or above 20x the mechanical
  // frequency, clamped to >= 1.
  int effective_decimation() const;
  double sample_rate() const { return 1.0 / (dt * effective_decimation()); }

  // FNV-1a over the canonical key=value serialization; stable provenance token.
  std::string hash() const;
  std::string canonical_string() const;
};

// Default parameter pack carrying the measured device constants: mechanical
// mode at 21.5 MHz with quality factor 2.3e3, optical quality factor 1.07e7
// at a 1550 nm carrier (the carrier assumption lives in the shipped config
// files, not here).
SystemParams default_params();

}  // namespace omchaos
