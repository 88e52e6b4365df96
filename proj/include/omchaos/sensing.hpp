#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omchaos/integrate.hpp"
#include "omchaos/regime.hpp"
#include "omchaos/welch.hpp"

namespace omchaos {

enum class StimulusCoupling { Force, DriveModulation };

// Injected ultrasonic tone. P_u is the nominal stimulus power used only in
// the NEP arithmetic; it calibrates the synthetic tone against a physical
// power scale and is not derived from the force amplitude.
struct UltrasoundStimulus {
  double f_u_hz = 570.0e3;
  double amplitude = 0.0;  // force units (or modulation depth in drive mode)
  double p_u_watts = 1.0e-6;
  StimulusCoupling coupling = StimulusCoupling::Force;

  void validate(double fs) const;
};

struct SensingReport {
  std::string regime = "unknown";
  double peak_db = 0.0;       // response power at f_u, dB (relative units)
  double floor_db = 0.0;      // median noise PSD near f_u, dB (relative units)
  double snr = 0.0;           // linear
  double nep_w_per_sqrt_hz = 0.0;
  double rbw_hz = 0.0;
  std::string status = "ok";
};

// Trajectory of the stimulated system. amplitude = 0 reproduces the
// unstimulated run bit for bit at equal seed.
Trajectory simulate_with_stimulus(const SystemParams& p, const UltrasoundStimulus& stim,
                                  std::uint64_t seed = 0);

// (power integrated over the signal bins) / (median noise PSD x signal
// bandwidth). Noise bins are the band [noise_lo, noise_hi] minus the signal
// bins and any extra mask entries.
double response_snr(const Spectrum& spec, double f_u_hz, double signal_halfwidth_hz,
                    double noise_lo_hz, double noise_hi_hz,
                    const std::vector<bool>& extra_mask = {});

// P_u / (SNR * sqrt(B)). Rejects snr = 0 ("signal not detected").
double nep(double p_u_watts, double snr, double rbw_hz);

struct SensingRunConfig {
  std::size_t nfft = 1 << 16;
  double overlap = 0.5;
  double signal_halfwidth_hz = 0.0;  // 0 = 3 bins
  double noise_band_halfwidth_hz = 0.0;  // 0 = 200 bins around f_u
};

// One report per config; each tagged with the regime of its unstimulated
// baseline. Per-config failures land in the report status instead of
// aborting the comparison. Results are ordered as the configs are.
std::vector<SensingReport> regime_comparison(const std::vector<SystemParams>& configs,
                                             const UltrasoundStimulus& stim,
                                             std::uint64_t seed = 0,
                                             const SensingRunConfig& run = {},
                                             const RegimeConfig& regime_cfg = {});

// Measures SNR/NEP of a tone already present in a series; shared by the
// simulated path and the synthesis-based fixtures.
SensingReport measure_tone(const TimeSeries& ts, const UltrasoundStimulus& stim,
                           const SensingRunConfig& run, const std::string& regime_name);

}  // namespace omchaos
