#include "omchaos/sensing.hpp"

#include <algorithm>
#include <cmath>

#include "omchaos/rng.hpp"

namespace omchaos {

void UltrasoundStimulus::validate(double fs) const {
  require(std::isfinite(f_u_hz) && f_u_hz > 0.0, "UltrasoundStimulus.f_u_hz must be > 0");
  require(f_u_hz < 0.5 * fs, "UltrasoundStimulus.f_u_hz must be below fs/2");
  require(std::isfinite(amplitude) && amplitude >= 0.0,
          "UltrasoundStimulus.amplitude must be >= 0");
  require(std::isfinite(p_u_watts) && p_u_watts > 0.0, "UltrasoundStimulus.p_u_watts must be > 0");
}

Trajectory simulate_with_stimulus(const SystemParams& p, const UltrasoundStimulus& stim,
                                  std::uint64_t seed) {
  p.validate();
  stim.validate(p.sample_rate());
  if (stim.amplitude == 0.0) return integrate(p, State{}, seed);  // null stimulus, common path

  const double w = 2.0 * M_PI * stim.f_u_hz;
  Stimulus s;
  if (stim.coupling == StimulusCoupling::Force) {
    s.force = [a = stim.amplitude, w](double t) { return a * std::sin(w * t); };
  } else {
    s.drive_mod = [a = stim.amplitude, w](double t) { return 1.0 + a * std::sin(w * t); };
  }
  return integrate(p, State{}, seed, &s);
}

double response_snr(const Spectrum& spec, double f_u_hz, double signal_halfwidth_hz,
                    double noise_lo_hz, double noise_hi_hz, const std::vector<bool>& extra_mask) {
  require(!spec.freqs.empty(), "response_snr: empty spectrum");
  require(f_u_hz > spec.freqs.front() && f_u_hz < spec.freqs.back(),
          "response_snr: f_u outside the spectrum range");
  require(signal_halfwidth_hz > 0.0, "response_snr: signal_halfwidth must be > 0");
  require(extra_mask.empty() || extra_mask.size() == spec.psd.size(),
          "response_snr: mask size must match spectrum bins");

  const double df = spec.bin_width();
  double signal_power = 0.0;
  std::vector<double> noise_bins;
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    const double f = spec.freqs[i];
    if (std::fabs(f - f_u_hz) <= signal_halfwidth_hz) {
      signal_power += spec.psd[i] * df;
      continue;
    }
    if (f < noise_lo_hz || f > noise_hi_hz) continue;
    if (!extra_mask.empty() && extra_mask[i]) continue;
    noise_bins.push_back(spec.psd[i]);
  }
  require(!noise_bins.empty(), "response_snr: noise band empty after exclusions");

  std::nth_element(noise_bins.begin(), noise_bins.begin() + noise_bins.size() / 2,
                   noise_bins.end());
  double noise_psd = noise_bins[noise_bins.size() / 2];
  if (noise_bins.size() % 2 == 0) {
    const double hi = noise_psd;
    std::nth_element(noise_bins.begin(), noise_bins.begin() + noise_bins.size() / 2 - 1,
                     noise_bins.end());
    noise_psd = 0.5 * (noise_bins[noise_bins.size() / 2 - 1] + hi);
  }
  const double noise_power = std::max(noise_psd, 1e-300) * 2.0 * signal_halfwidth_hz;
  return signal_power / noise_power;
}

double nep(double p_u_watts, double snr, double rbw_hz) {
  require(p_u_watts > 0.0, "nep: P_u must be > 0");
  require(rbw_hz > 0.0, "nep: bandwidth must be > 0");
  require(snr > 0.0, "nep: signal not detected (snr = 0)");
  return p_u_watts / (snr * std::sqrt(rbw_hz));
}

SensingReport measure_tone(const TimeSeries& ts, const UltrasoundStimulus& stim,
                           const SensingRunConfig& run, const std::string& regime_name) {
  const Spectrum spec = welch_psd(ts, run.nfft, run.overlap);
  const double df = spec.bin_width();
  const double sig_hw = run.signal_halfwidth_hz > 0.0 ? run.signal_halfwidth_hz : 3.0 * df;
  const double noise_hw =
      run.noise_band_halfwidth_hz > 0.0 ? run.noise_band_halfwidth_hz : 200.0 * df;
  const double noise_lo = std::max(spec.freqs.front() + df, stim.f_u_hz - noise_hw);
  const double noise_hi = std::min(spec.freqs.back(), stim.f_u_hz + noise_hw);

  SensingReport report;
  report.regime = regime_name;
  report.rbw_hz = spec.rbw_hz;
  report.snr = response_snr(spec, stim.f_u_hz, sig_hw, noise_lo, noise_hi);
  report.nep_w_per_sqrt_hz = nep(stim.p_u_watts, report.snr, spec.rbw_hz);

  double peak_power = 0.0;
  std::vector<double> noise_bins;
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    const double f = spec.freqs[i];
    if (std::fabs(f - stim.f_u_hz) <= sig_hw) peak_power += spec.psd[i] * df;
    else if (f >= noise_lo && f <= noise_hi) noise_bins.push_back(spec.psd[i]);
  }
  std::nth_element(noise_bins.begin(), noise_bins.begin() + noise_bins.size() / 2,
                   noise_bins.end());
  report.peak_db = 10.0 * std::log10(std::max(peak_power, 1e-300));
  report.floor_db = 10.0 * std::log10(std::max(noise_bins[noise_bins.size() / 2], 1e-300));
  return report;
}

std::vector<SensingReport> regime_comparison(const std::vector<SystemParams>& configs,
                                             const UltrasoundStimulus& stim, std::uint64_t seed,
                                             const SensingRunConfig& run,
                                             const RegimeConfig& regime_cfg) {
  require(configs.size() >= 2, "regime_comparison: need at least 2 configs spanning regimes");

  std::vector<SensingReport> reports(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::uint64_t run_seed = point_seed(seed, i);
    try {
      const Trajectory baseline = integrate(configs[i], State{}, run_seed);
      const Regime regime = regime_classify(baseline, regime_cfg);
      const Trajectory stimulated = simulate_with_stimulus(configs[i], stim, run_seed);
      reports[i] = measure_tone(stimulated.intensity_series(), stim, run, to_string(regime.label));
    } catch (const std::exception& e) {
      reports[i].regime = "unknown";
      reports[i].status = std::string("failed: ") + e.what();
    }
  }
  return reports;
}

}  // namespace omchaos
