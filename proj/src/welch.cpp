#include "omchaos/welch.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "omchaos/fft.hpp"

namespace omchaos {

namespace {

constexpr double kDbFloorClamp = 1e-300;

struct WelchPlan {
  std::size_t nfft;
  std::size_t hop;
  std::size_t n_segments;
  std::vector<double> window;
  double u;  // sum of squared taper values
};

WelchPlan make_plan(const TimeSeries& ts, std::size_t nfft, double overlap) {
  require(ts.fs > 0.0, "welch_psd: series sample rate must be > 0");
  require(nfft >= 4, "welch_psd: nfft must be >= 4");
  require(is_power_of_two(nfft), "welch_psd: nfft must be a power of two");
  require(nfft <= ts.values.size(), "welch_psd: series shorter than nfft");
  require(overlap >= 0.0 && overlap < 1.0, "welch_psd: overlap must be in [0, 1)");

  WelchPlan plan;
  plan.nfft = nfft;
  const auto noverlap = static_cast<std::size_t>(std::floor(overlap * nfft));
  plan.hop = nfft - noverlap;
  if (plan.hop == 0) plan.hop = 1;
  plan.n_segments = 1 + (ts.values.size() - nfft) / plan.hop;
  plan.window = hann_window(nfft);
  plan.u = 0.0;
  for (double w : plan.window) plan.u += w * w;
  return plan;
}

// |FFT|^2 of one tapered segment.
void segment_power(const TimeSeries& ts, const WelchPlan& plan, std::size_t seg,
                   std::vector<std::complex<double>>& buf, std::vector<double>& power) {
  const std::size_t off = seg * plan.hop;
  buf.resize(plan.nfft);
  for (std::size_t i = 0; i < plan.nfft; ++i)
    buf[i] = {ts.values[off + i] * plan.window[i], 0.0};
  fft_radix2(buf);
  const std::size_t nbins = plan.nfft / 2 + 1;
  power.resize(nbins);
  for (std::size_t k = 0; k < nbins; ++k) power[k] = std::norm(buf[k]);
}

Spectrum finalize(const TimeSeries& ts, const WelchPlan& plan, double overlap,
                  std::vector<double>&& acc) {
  const std::size_t nbins = plan.nfft / 2 + 1;
  Spectrum spec;
  spec.nfft = plan.nfft;
  spec.overlap = overlap;
  spec.fs = ts.fs;
  spec.rbw_hz = 1.5 * ts.fs / static_cast<double>(plan.nfft);  // Hann ENBW
  spec.freqs.resize(nbins);
  spec.psd = std::move(acc);
  const double scale = 1.0 / (ts.fs * plan.u * static_cast<double>(plan.n_segments));
  for (std::size_t k = 0; k < nbins; ++k) {
    spec.freqs[k] = static_cast<double>(k) * ts.fs / static_cast<double>(plan.nfft);
    const bool interior = k != 0 && k != nbins - 1;
    spec.psd[k] *= scale * (interior ? 2.0 : 1.0);
  }
  return spec;
}

}  // namespace

std::vector<double> Spectrum::psd_db() const {
  std::vector<double> out(psd.size());
  for (std::size_t i = 0; i < psd.size(); ++i)
    out[i] = 10.0 * std::log10(std::max(psd[i], kDbFloorClamp));
  return out;
}

Spectrum welch_psd_serial(const TimeSeries& ts, std::size_t nfft, double overlap) {
  const WelchPlan plan = make_plan(ts, nfft, overlap);
  const std::size_t nbins = nfft / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  std::vector<std::complex<double>> buf;
  std::vector<double> power;
  for (std::size_t seg = 0; seg < plan.n_segments; ++seg) {
    segment_power(ts, plan, seg, buf, power);
    for (std::size_t k = 0; k < nbins; ++k) acc[k] += power[k];
  }
  return finalize(ts, plan, overlap, std::move(acc));
}

Spectrum welch_psd(const TimeSeries& ts, std::size_t nfft, double overlap) {
  const WelchPlan plan = make_plan(ts, nfft, overlap);
  const std::size_t nbins = nfft / 2 + 1;

  // Per-segment periodograms land in their own slots; the sum over segments
  // runs in fixed order afterwards.
  std::vector<std::vector<double>> slots(plan.n_segments);
#pragma omp parallel
  {
    std::vector<std::complex<double>> buf;
#pragma omp for schedule(static)
    for (long long seg = 0; seg < static_cast<long long>(plan.n_segments); ++seg)
      segment_power(ts, plan, static_cast<std::size_t>(seg), buf, slots[seg]);
  }

  std::vector<double> acc(nbins, 0.0);
  for (std::size_t seg = 0; seg < plan.n_segments; ++seg)
    for (std::size_t k = 0; k < nbins; ++k) acc[k] += slots[seg][k];
  return finalize(ts, plan, overlap, std::move(acc));
}

double spectral_floor(const Spectrum& spec, const std::vector<bool>& mask, double f_lo,
                      double f_hi) {
  require(mask.empty() || mask.size() == spec.psd.size(),
          "spectral_floor: mask size must match spectrum bins");
  require(f_hi > f_lo, "spectral_floor: band must be non-empty");

  std::size_t in_band = 0;
  std::vector<double> kept;
  kept.reserve(spec.psd.size());
  for (std::size_t i = 0; i < spec.psd.size(); ++i) {
    if (spec.freqs[i] < f_lo || spec.freqs[i] > f_hi) continue;
    ++in_band;
    if (!mask.empty() && mask[i]) continue;
    kept.push_back(spec.psd[i]);
  }
  require(in_band > 0, "spectral_floor: no bins in band");
  require(kept.size() * 2 > in_band, "spectral_floor: mask excludes half or more of the band");

  std::nth_element(kept.begin(), kept.begin() + kept.size() / 2, kept.end());
  double med = kept[kept.size() / 2];
  if (kept.size() % 2 == 0) {
    const double hi = med;
    std::nth_element(kept.begin(), kept.begin() + kept.size() / 2 - 1, kept.end());
    med = 0.5 * (kept[kept.size() / 2 - 1] + hi);
  }
  return 10.0 * std::log10(std::max(med, kDbFloorClamp));
}

std::vector<bool> harmonic_mask(const Spectrum& spec, double f0, double halfwidth_hz) {
  require(f0 > 0.0, "harmonic_mask: f0 must be > 0");
  std::vector<bool> mask(spec.psd.size(), false);
  for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
    const double f = spec.freqs[i];
    const double k = std::round(f / f0);
    if (k >= 1.0 && std::fabs(f - k * f0) <= halfwidth_hz) mask[i] = true;
  }
  return mask;
}

std::vector<bool> auto_peak_mask(const Spectrum& spec, double f_lo, double f_hi,
                                 double prominence_db, std::size_t halfwidth_bins) {
  std::vector<double> band;
  for (std::size_t i = 0; i < spec.psd.size(); ++i)
    if (spec.freqs[i] >= f_lo && spec.freqs[i] <= f_hi) band.push_back(spec.psd[i]);
  require(!band.empty(), "auto_peak_mask: no bins in band");
  std::nth_element(band.begin(), band.begin() + band.size() / 2, band.end());
  const double med = std::max(band[band.size() / 2], kDbFloorClamp);
  const double cut = med * std::pow(10.0, prominence_db / 10.0);

  std::vector<bool> mask(spec.psd.size(), false);
  for (std::size_t i = 0; i < spec.psd.size(); ++i) {
    if (spec.psd[i] <= cut) continue;
    const std::size_t lo = i > halfwidth_bins ? i - halfwidth_bins : 0;
    const std::size_t hi = std::min(spec.psd.size() - 1, i + halfwidth_bins);
    for (std::size_t j = lo; j <= hi; ++j) mask[j] = true;
  }
  return mask;
}

}  // namespace omchaos
