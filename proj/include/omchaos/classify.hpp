#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omchaos/features.hpp"
#include "omchaos/types.hpp"

namespace omchaos {

enum class EpochLabel { Periodic, Chaotic };

inline const char* to_string(EpochLabel l) {
  return l == EpochLabel::Chaotic ? "chaotic" : "periodic";
}

struct ClassifierConfig {
  // Per-feature thresholds; a window votes chaotic on each feature it exceeds.
  double theta_flatness = 0.2;
  double theta_k = 0.5;
  double theta_return = 0.06;  // 3x the periodic fixture baseline (~0.02)
  double weights[3] = {1.0, 1.0, 1.0};
  // A window is raw-chaotic when the weighted vote fraction exceeds 1/2.
  // Switching the running label requires hysteresis_m consecutive dissents.
  int hysteresis_m = 2;
  double min_epoch_windows = 6.0;  // min epoch = this many hops (3 x window at hop=window/2)

  void validate() const;
};

// Hysteresis-smoothed per-window labels.
std::vector<EpochLabel> classify(const std::vector<WindowFeatures>& features,
                                 const ClassifierConfig& cfg);

struct Segment {
  double start_s = 0.0;
  double end_s = 0.0;
  EpochLabel label = EpochLabel::Periodic;

  double duration() const { return end_s - start_s; }
};

struct SegmentReport {
  std::vector<Segment> segments;  // tile [t0, t_end] without overlap
  double chaotic_fraction = 0.0;
  double window_s = 0.0;
  double hop_s = 0.0;
  double t0 = 0.0;
  double t_end = 0.0;
  ClassifierConfig thresholds;
};

// Merges adjacent same-label windows into segments, absorbs epochs shorter
// than min_epoch into their longer neighbor, and computes the chaotic time
// fraction. Window i owns [t0 + i*hop, t0 + (i+1)*hop); the last window
// extends to the series end.
SegmentReport segments_from_labels(const std::vector<EpochLabel>& labels, const FeatureTrack& track,
                                   double min_epoch_s, const ClassifierConfig& cfg);

// Full pipeline: features -> vote -> segments.
SegmentReport segment_series(const TimeSeries& ts, double window_s, double hop_s,
                             const ClassifierConfig& cfg = {}, const FeatureConfig& fcfg = {});

struct DutyCycleFit {
  bool sufficient_epochs = false;  // >= 3 chaotic epochs observed
  double duty = 0.0;               // point estimate, equals chaotic_fraction
  double duty_halfwidth = 0.0;     // bootstrap 90% half-width (0 when not estimable)
  bool ts_defined = false;
  double ts_s = 0.0;               // median spacing between chaotic-epoch onsets
  double ts_halfwidth_s = 0.0;
};

// Gating estimate from a segment report. With fewer than 3 chaotic epochs the
// duty point estimate is still returned but the fit is flagged insufficient
// and Ts is undefined.
DutyCycleFit fit_duty_cycle(const SegmentReport& report, std::uint64_t seed = 0,
                            std::size_t n_bootstrap = 200);

}  // namespace omchaos
