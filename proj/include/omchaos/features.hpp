#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omchaos/types.hpp"

namespace omchaos {

struct FeatureConfig {
  std::size_t flatness_sublen = 128;  // sub-segment length for the in-window PSD
  std::size_t n_phases = 64;          // random phases for the 0-1 statistic
  std::uint64_t phase_seed = 0x0105;  // phases are drawn once per feature pass
};

// Per-window chaos indicators.
struct WindowFeatures {
  double t_start = 0.0;
  double spectral_flatness = 0.0;   // in [0, 1]
  double zero_one_k = 0.0;          // in [0, 1]
  double period_return_error = 0.0; // >= 0
};

struct FeatureTrack {
  double window_s = 0.0;
  double hop_s = 0.0;
  double fs = 0.0;
  double t0 = 0.0;
  double series_duration_s = 0.0;
  std::vector<WindowFeatures> windows;
};

// Geometric/arithmetic mean ratio of the windowed PSD (sub-averaged Hann
// periodograms, DC excluded). Near 0 for line spectra, near 1 for broadband.
double spectral_flatness(std::span<const double> window, std::size_t sublen = 128);

// 0-1 chaos statistic: translation variables p, q per phase, mean-square
// displacement with the oscillatory term removed, correlation of the MSD with
// lag, median over the supplied phases, clamped to [0, 1].
double zero_one_k(std::span<const double> series, std::span<const double> phases);

// Draws n_phases uniformly from (pi/5, 4pi/5).
std::vector<double> zero_one_phases(std::size_t n_phases, std::uint64_t seed);

// Convenience: median K over n_phases seeded phases.
double zero_one_k(std::span<const double> series, std::size_t n_phases, std::uint64_t seed);

// RMS distance of successive-peak return-map points from their medoid,
// computed on the variance-normalized window. Near 0 for a clean single
// period, order 1 for chaotic peak sequences.
double period_return_error(std::span<const double> window);

// Sliding-window feature extraction. Windows are independent and run under
// OpenMP; window_features_serial is the reference path and produces
// bit-identical output. Rejects windows longer than the series or hops
// larger than half the window.
FeatureTrack window_features(const TimeSeries& ts, double window_s, double hop_s,
                             const FeatureConfig& cfg = {});
FeatureTrack window_features_serial(const TimeSeries& ts, double window_s, double hop_s,
                                    const FeatureConfig& cfg = {});

// Window span covering 20 periods of the dominant spectral peak; used when
// no explicit window is configured for a trajectory.
double auto_window_seconds(const TimeSeries& ts);

}  // namespace omchaos
