#pragma once

#include <optional>
#include <string>

#include "omchaos/classify.hpp"
#include "omchaos/integrate.hpp"
#include "omchaos/welch.hpp"

namespace omchaos {

enum class RegimeLabel { Periodic, IntermittentChaos, Chaotic };

inline const char* to_string(RegimeLabel r) {
  switch (r) {
    case RegimeLabel::Periodic: return "periodic";
    case RegimeLabel::Chaotic: return "chaotic";
    default: return "intermittent-chaos";
  }
}

struct RegimeEvidence {
  double chaotic_fraction = 0.0;
  double floor_elevation_db = 0.0;  // spectral floor relative to the dominant peak
  std::optional<double> lyapunov;   // filled by callers that own the params
};

struct Regime {
  RegimeLabel label = RegimeLabel::Periodic;
  RegimeEvidence evidence;
  SegmentReport segmentation;
};

struct RegimeConfig {
  double window_s = 0.0;  // 0 = auto (20 dominant periods)
  double periodic_max_fraction = 0.05;
  double chaotic_min_fraction = 0.95;
  ClassifierConfig classifier;
  FeatureConfig features;
};

// Three-way regime call on a scalar series: Periodic below the lower
// chaotic-fraction cutoff, Chaotic above the upper one, intermittent between.
Regime regime_classify(const TimeSeries& ts, const RegimeConfig& cfg = {});

// Trajectory overload; classifies the recorded intensity channel.
Regime regime_classify(const Trajectory& traj, const RegimeConfig& cfg = {});

// Floor elevation statistic: median non-peak PSD level minus the dominant
// peak level, in dB (more negative = cleaner spectrum).
double floor_elevation_db(const Spectrum& spec);

}  // namespace omchaos
