#include "omchaos/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "omchaos/fft.hpp"
#include "omchaos/rng.hpp"
#include "omchaos/welch.hpp"

namespace omchaos {

namespace {

double median_inplace(std::vector<double>& v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  double med = v[v.size() / 2];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2 - 1, v.end());
    med = 0.5 * (med + v[v.size() / 2 - 1]);
  }
  return med;
}

// K for a single phase c: correlation of the corrected mean-square
// displacement of the translation variables with the lag.
double k_for_phase(std::span<const double> x, double c) {
  const std::size_t n = x.size();
  const std::size_t ncut = std::max<std::size_t>(8, n / 10);

  std::vector<double> p(n + 1, 0.0), q(n + 1, 0.0);
  double mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double arg = c * static_cast<double>(j + 1);
    p[j + 1] = p[j] + x[j] * std::cos(arg);
    q[j + 1] = q[j] + x[j] * std::sin(arg);
    mean += x[j];
  }
  mean /= static_cast<double>(n);

  const double one_minus_cos = 1.0 - std::cos(c);
  std::vector<double> d(ncut);
  const std::size_t n_avg = n - ncut;
  for (std::size_t lag = 1; lag <= ncut; ++lag) {
    double msd = 0.0;
    for (std::size_t j = 0; j < n_avg; ++j) {
      const double dp = p[j + lag] - p[j];
      const double dq = q[j + lag] - q[j];
      msd += dp * dp + dq * dq;
    }
    msd /= static_cast<double>(n_avg);
    const double vosc =
        mean * mean * (1.0 - std::cos(static_cast<double>(lag) * c)) / one_minus_cos;
    d[lag - 1] = msd - vosc;
  }

  // Pearson correlation of d against lag 1..ncut.
  const double nn = static_cast<double>(ncut);
  const double mean_lag = 0.5 * (nn + 1.0);
  double mean_d = std::accumulate(d.begin(), d.end(), 0.0) / nn;
  double cov = 0.0, var_lag = 0.0, var_d = 0.0;
  for (std::size_t i = 0; i < ncut; ++i) {
    const double dl = static_cast<double>(i + 1) - mean_lag;
    const double dd = d[i] - mean_d;
    cov += dl * dd;
    var_lag += dl * dl;
    var_d += dd * dd;
  }
  if (var_d <= 0.0 || var_lag <= 0.0) return 0.0;
  return cov / std::sqrt(var_lag * var_d);
}

}  // namespace

double spectral_flatness(std::span<const double> window, std::size_t sublen) {
  require(window.size() >= 16, "spectral_flatness: window too short");
  sublen = std::min(sublen, std::size_t{1} << static_cast<std::size_t>(
                                std::floor(std::log2(static_cast<double>(window.size())))));
  if (!is_power_of_two(sublen)) {
    std::size_t p = 8;
    while (p * 2 <= sublen) p *= 2;
    sublen = p;
  }
  sublen = std::max<std::size_t>(sublen, 8);

  TimeSeries ts{0.0, 1.0, std::vector<double>(window.begin(), window.end())};
  double mean = std::accumulate(ts.values.begin(), ts.values.end(), 0.0) /
                static_cast<double>(ts.values.size());
  for (double& v : ts.values) v -= mean;

  const Spectrum spec = welch_psd_serial(ts, sublen, 0.5);
  double log_sum = 0.0, lin_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 1; k + 1 < spec.psd.size(); ++k) {  // skip DC and Nyquist
    const double v = std::max(spec.psd[k], 1e-300);
    log_sum += std::log(v);
    lin_sum += v;
    ++count;
  }
  if (count == 0 || lin_sum <= 0.0) return 0.0;
  const double gm = std::exp(log_sum / static_cast<double>(count));
  const double am = lin_sum / static_cast<double>(count);
  return std::clamp(gm / am, 0.0, 1.0);
}

std::vector<double> zero_one_phases(std::size_t n_phases, std::uint64_t seed) {
  require(n_phases >= 1, "zero_one_phases: need at least one phase");
  Rng rng(sub_seed(seed, SeedTag::TestPhases));
  std::vector<double> phases(n_phases);
  for (double& c : phases) c = rng.uniform(M_PI / 5.0, 4.0 * M_PI / 5.0);
  return phases;
}

double zero_one_k(std::span<const double> series, std::span<const double> phases) {
  require(series.size() >= 64, "zero_one_k: series too short");
  require(!phases.empty(), "zero_one_k: no phases supplied");
  std::vector<double> ks(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) ks[i] = k_for_phase(series, phases[i]);
  return std::clamp(median_inplace(ks), 0.0, 1.0);
}

double zero_one_k(std::span<const double> series, std::size_t n_phases, std::uint64_t seed) {
  const auto phases = zero_one_phases(n_phases, seed);
  return zero_one_k(series, phases);
}

double period_return_error(std::span<const double> window) {
  require(window.size() >= 16, "period_return_error: window too short");
  const std::size_t n = window.size();

  double mean = std::accumulate(window.begin(), window.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : window) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  if (var <= 0.0) return 0.0;  // constant window: no oscillation to score
  const double inv_sd = 1.0 / std::sqrt(var);

  // Parabolically refined strict local maxima of the normalized window.
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(window[i] > window[i - 1] && window[i] >= window[i + 1])) continue;
    const double y0 = window[i - 1], y1 = window[i], y2 = window[i + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    double peak = y1;
    if (denom < 0.0) peak = y1 - 0.125 * (y2 - y0) * (y2 - y0) / denom;
    peaks.push_back((peak - mean) * inv_sd);
  }
  if (peaks.size() < 4) return 0.0;

  // Successive-peak return map and its medoid.
  const std::size_t m = peaks.size() - 1;
  std::vector<double> px(m), py(m);
  for (std::size_t i = 0; i < m; ++i) {
    px[i] = peaks[i];
    py[i] = peaks[i + 1];
  }
  std::size_t medoid = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j)
      sum += std::hypot(px[i] - px[j], py[i] - py[j]);
    if (sum < best) {
      best = sum;
      medoid = i;
    }
  }
  double rms = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double dx = px[medoid] - px[j];
    const double dy = py[medoid] - py[j];
    rms += dx * dx + dy * dy;
  }
  return std::sqrt(rms / static_cast<double>(m));
}

namespace {

FeatureTrack feature_track_frame(const TimeSeries& ts, double window_s, double hop_s) {
  require(ts.fs > 0.0, "window_features: series sample rate must be > 0");
  require(window_s > 0.0 && hop_s > 0.0, "window_features: window and hop must be > 0");
  require(hop_s <= window_s / 2.0 + 1e-12, "window_features: hop must be <= window/2");
  const auto win = static_cast<std::size_t>(std::llround(window_s * ts.fs));
  require(win >= 32, "window_features: window too short for feature estimates");
  require(win <= ts.values.size(), "window_features: window longer than the series");

  FeatureTrack track;
  track.window_s = window_s;
  track.hop_s = hop_s;
  track.fs = ts.fs;
  track.t0 = ts.t0;
  track.series_duration_s = static_cast<double>(ts.values.size()) / ts.fs;
  return track;
}

WindowFeatures compute_window(const TimeSeries& ts, std::size_t start, std::size_t win,
                              const FeatureConfig& cfg, std::span<const double> phases) {
  std::span<const double> w(ts.values.data() + start, win);
  WindowFeatures f;
  f.t_start = ts.t0 + static_cast<double>(start) / ts.fs;
  f.spectral_flatness = spectral_flatness(w, cfg.flatness_sublen);
  f.zero_one_k = zero_one_k(w, phases);
  f.period_return_error = period_return_error(w);
  return f;
}

}  // namespace

FeatureTrack window_features_serial(const TimeSeries& ts, double window_s, double hop_s,
                                    const FeatureConfig& cfg) {
  FeatureTrack track = feature_track_frame(ts, window_s, hop_s);
  const auto win = static_cast<std::size_t>(std::llround(window_s * ts.fs));
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(hop_s * ts.fs)));
  const auto phases = zero_one_phases(cfg.n_phases, cfg.phase_seed);

  for (std::size_t start = 0; start + win <= ts.values.size(); start += hop)
    track.windows.push_back(compute_window(ts, start, win, cfg, phases));
  return track;
}

FeatureTrack window_features(const TimeSeries& ts, double window_s, double hop_s,
                             const FeatureConfig& cfg) {
  FeatureTrack track = feature_track_frame(ts, window_s, hop_s);
  const auto win = static_cast<std::size_t>(std::llround(window_s * ts.fs));
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(hop_s * ts.fs)));
  const auto phases = zero_one_phases(cfg.n_phases, cfg.phase_seed);

  std::vector<std::size_t> starts;
  for (std::size_t start = 0; start + win <= ts.values.size(); start += hop)
    starts.push_back(start);
  track.windows.resize(starts.size());

#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(starts.size()); ++i)
    track.windows[i] = compute_window(ts, starts[i], win, cfg, phases);
  return track;
}

double auto_window_seconds(const TimeSeries& ts) {
  require(ts.values.size() >= 256, "auto_window_seconds: series too short");
  std::size_t nfft = 1;
  while (nfft * 2 <= std::min<std::size_t>(ts.values.size(), 1 << 16)) nfft *= 2;

  TimeSeries centered = ts;
  double mean = std::accumulate(centered.values.begin(), centered.values.end(), 0.0) /
                static_cast<double>(centered.values.size());
  for (double& v : centered.values) v -= mean;

  const Spectrum spec = welch_psd_serial(centered, nfft, 0.5);
  std::size_t peak = 1;
  for (std::size_t k = 2; k < spec.psd.size(); ++k)
    if (spec.psd[k] > spec.psd[peak]) peak = k;
  const double f_dom = spec.freqs[peak];
  require(f_dom > 0.0, "auto_window_seconds: no dominant peak found");
  return 20.0 / f_dom;
}

}  // namespace omchaos
