#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "omchaos/model.hpp"
#include "omchaos/params.hpp"
#include "omchaos/types.hpp"

namespace omchaos {

// Time-dependent force on the mechanical velocity equation.
using ForceFunction = std::function<double(double)>;

// Multiplies the drive amplitude; used for the drive-modulation stimulus path.
using DriveModulation = std::function<double(double)>;

// Uniformly sampled record of (|a|^2, x, v). fs = 1/(dt * decimation);
// t0 is the absolute time of the first recorded sample.
struct Trajectory {
  double t0 = 0.0;
  double fs = 0.0;
  std::vector<double> intensity;
  std::vector<double> x;
  std::vector<double> v;
  std::string params_hash;
  std::uint64_t seed = 0;

  std::size_t size() const { return intensity.size(); }
  TimeSeries intensity_series() const { return {t0, fs, intensity}; }
  TimeSeries x_series() const { return {t0, fs, x}; }
  TimeSeries v_series() const { return {t0, fs, v}; }
};

struct Stimulus {
  ForceFunction force;        // additive force on dv/dt
  DriveModulation drive_mod;  // multiplicative drive modulation
};

// Classical fixed-step RK4. Discards t_transient, then records
// round(t_record * fs) samples at the decimated rate. When noise_sigma > 0 a
// white force increment noise_sigma*sqrt(dt)*xi is applied to v after each
// step, drawn from the Noise sub-stream of `seed`; runs are reproducible for
// a given (params, seed, s0). Any state component exceeding 1e12 in magnitude
// raises DivergenceError carrying the blow-up time.
Trajectory integrate(const SystemParams& p, const State& s0, std::uint64_t seed = 0,
                     const Stimulus* stimulus = nullptr);

// Scan result of the self-oscillation onset search. `drive` is empty when no
// onset exists in the scanned range.
struct ThresholdResult {
  std::optional<double> drive;
  double baseline_amplitude = 0.0;  // oscillation amplitude at the low end of the range
};

// Scans n_steps drive values over [drive_lo, drive_hi]; the onset criterion is
// a steady-state mechanical oscillation amplitude above 10x the subthreshold
// baseline. The baseline is the amplitude at the low end of the range scaled
// by (drive/drive_lo)^2, tracking the quadratic forced response below onset,
// and is floored at 1e-9 to guard the quiescent case. The bracketing interval
// is bisected down to 1/128 of the scan step.
ThresholdResult find_threshold(const SystemParams& p, double drive_lo, double drive_hi,
                               int n_steps);

// Oscillation amplitude (max-min)/2 of x over the recorded window; helper
// shared by the threshold scan and its tests.
double oscillation_amplitude(const SystemParams& p, double drive);

}  // namespace omchaos
