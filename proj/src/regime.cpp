#include "omchaos/regime.hpp"

#include <algorithm>
#include <cmath>

namespace omchaos {

double floor_elevation_db(const Spectrum& spec) {
  const double f_lo = spec.freqs.front() + spec.bin_width();
  const double f_hi = spec.freqs.back();
  const auto mask = auto_peak_mask(spec, f_lo, f_hi);

  // Keep the mask legal for spectral_floor even on broadband spectra.
  std::size_t in_band = 0, masked = 0;
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    if (spec.freqs[i] < f_lo || spec.freqs[i] > f_hi) continue;
    ++in_band;
    if (mask[i]) ++masked;
  }
  const bool usable = in_band > 0 && (in_band - masked) * 2 > in_band;
  const double floor_db =
      spectral_floor(spec, usable ? mask : std::vector<bool>{}, f_lo, f_hi);

  double peak = 0.0;
  for (std::size_t i = 1; i < spec.psd.size(); ++i) peak = std::max(peak, spec.psd[i]);
  const double peak_db = 10.0 * std::log10(std::max(peak, 1e-300));
  return floor_db - peak_db;
}

Regime regime_classify(const TimeSeries& ts, const RegimeConfig& cfg) {
  require(cfg.periodic_max_fraction > 0.0 && cfg.chaotic_min_fraction < 1.0 &&
              cfg.periodic_max_fraction < cfg.chaotic_min_fraction,
          "regime_classify: fraction cutoffs must satisfy 0 < lo < hi < 1");

  const double window_s = cfg.window_s > 0.0 ? cfg.window_s : auto_window_seconds(ts);
  Regime regime;
  regime.segmentation =
      segment_series(ts, window_s, window_s / 2.0, cfg.classifier, cfg.features);
  regime.evidence.chaotic_fraction = regime.segmentation.chaotic_fraction;

  std::size_t nfft = 1;
  while (nfft * 2 <= std::min<std::size_t>(ts.values.size(), 1 << 14)) nfft *= 2;
  regime.evidence.floor_elevation_db = floor_elevation_db(welch_psd(ts, nfft, 0.5));

  const double f = regime.evidence.chaotic_fraction;
  if (f < cfg.periodic_max_fraction)
    regime.label = RegimeLabel::Periodic;
  else if (f > cfg.chaotic_min_fraction)
    regime.label = RegimeLabel::Chaotic;
  else
    regime.label = RegimeLabel::IntermittentChaos;
  return regime;
}

Regime regime_classify(const Trajectory& traj, const RegimeConfig& cfg) {
  return regime_classify(traj.intensity_series(), cfg);
}

}  // namespace omchaos
