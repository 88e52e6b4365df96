#pragma once

#include <cstdint>
#include <vector>

#include "omchaos/types.hpp"

namespace omchaos {

// Square-wave gating: cycle period Ts, gated duration T0 per cycle,
// duty cycle D = T0/Ts. The gate value 1 selects the chaotic part.
struct GatingSpec {
  double ts_s = 1.0;
  double duty = 0.5;

  double t0_s() const { return duty * ts_s; }
  void validate() const {
    require(ts_s > 0.0, "GatingSpec.ts_s must be > 0");
    require(duty >= 0.0 && duty <= 1.0, "GatingSpec.duty must be in [0, 1]");
  }
};

// s(t): 1 on the first T0 of each cycle (centered convention folded to the
// cycle start), 0 on the rest. Periodic with period Ts; mean over one exact
// period equals D. Total function.
int square_wave(double t, const GatingSpec& spec);

// x_{k+1} = r x_k (1 - x_k), requires 0 < r <= 4, 0 < x0 < 1.
TimeSeries logistic_series(double r, double x0, std::size_t n, double fs = 1.0);

// Weighted harmonic sum of f0; exactly periodic with period 1/f0 when fs/f0
// is an integer. Rejects when f0 * n_harmonics reaches the Nyquist rate.
TimeSeries harmonic_series(double f0, const std::vector<double>& weights, double fs,
                           double duration);

struct SourcePair {
  TimeSeries periodic;
  TimeSeries chaotic;
};

struct SynthesisResult {
  TimeSeries series;
  std::vector<int> labels;  // per-sample ground truth, 1 = chaotic
  GatingSpec spec;
  double gate_phase_s = 0.0;  // gate origin offset applied at synthesis time
};

// Per-sample mix x_I = x_C * s + x_P * (1 - s). Both sources are mean-removed
// and scaled to unit RMS before mixing; the exact per-sample gate values are
// returned as the ground-truth label track. gate_phase_seed, when nonzero,
// randomizes the gate origin within one cycle so epoch edges do not align
// with analysis windows.
SynthesisResult synthesize_intermittent(const SourcePair& sources, const GatingSpec& spec,
                                        double duration, double fs,
                                        std::uint64_t gate_phase_seed = 0);

// In-place mean removal and scaling to unit RMS (no-op on constant series).
void normalize_rms(std::vector<double>& values);

}  // namespace omchaos
