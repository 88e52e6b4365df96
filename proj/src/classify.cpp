#include "omchaos/classify.hpp"

#include <algorithm>
#include <cmath>

#include "omchaos/rng.hpp"

namespace omchaos {

void ClassifierConfig::validate() const {
  require(theta_flatness > 0.0 && theta_flatness < 1.0,
          "ClassifierConfig.theta_flatness must be in (0, 1)");
  require(theta_k > 0.0 && theta_k < 1.0, "ClassifierConfig.theta_k must be in (0, 1)");
  require(theta_return > 0.0, "ClassifierConfig.theta_return must be > 0");
  require(weights[0] >= 0.0 && weights[1] >= 0.0 && weights[2] >= 0.0 &&
              weights[0] + weights[1] + weights[2] > 0.0,
          "ClassifierConfig.weights must be non-negative with positive sum");
  require(hysteresis_m >= 1, "ClassifierConfig.hysteresis_m must be >= 1");
  require(min_epoch_windows >= 1.0, "ClassifierConfig.min_epoch_windows must be >= 1");
}

std::vector<EpochLabel> classify(const std::vector<WindowFeatures>& features,
                                 const ClassifierConfig& cfg) {
  cfg.validate();
  if (features.empty()) return {};

  const double total_w = cfg.weights[0] + cfg.weights[1] + cfg.weights[2];
  auto raw_label = [&](const WindowFeatures& f) {
    double vote = 0.0;
    if (f.spectral_flatness > cfg.theta_flatness) vote += cfg.weights[0];
    if (f.zero_one_k > cfg.theta_k) vote += cfg.weights[1];
    if (f.period_return_error > cfg.theta_return) vote += cfg.weights[2];
    return vote > 0.5 * total_w ? EpochLabel::Chaotic : EpochLabel::Periodic;
  };

  const std::size_t n = features.size();
  std::vector<EpochLabel> out(n);
  EpochLabel current = raw_label(features[0]);
  std::size_t pending = 0;     // length of the running dissent streak
  std::size_t pend_start = 0;  // first window of that streak

  for (std::size_t i = 0; i < n; ++i) {
    const EpochLabel raw = raw_label(features[i]);
    if (raw == current) {
      for (std::size_t j = pend_start; j < i && pending > 0; ++j) out[j] = current;
      pending = 0;
      out[i] = current;
      continue;
    }
    if (pending == 0) pend_start = i;
    ++pending;
    if (pending >= static_cast<std::size_t>(cfg.hysteresis_m)) {
      current = raw;
      for (std::size_t j = pend_start; j <= i; ++j) out[j] = current;
      pending = 0;
    }
  }
  // A trailing dissent streak shorter than m is suppressed.
  for (std::size_t j = pend_start; pending > 0 && j < n; ++j) out[j] = current;
  return out;
}

namespace {

std::vector<Segment> coalesce(std::vector<Segment> segs) {
  std::vector<Segment> out;
  for (const Segment& s : segs) {
    if (!out.empty() && out.back().label == s.label && out.back().end_s == s.start_s)
      out.back().end_s = s.end_s;
    else
      out.push_back(s);
  }
  return out;
}

}  // namespace

SegmentReport segments_from_labels(const std::vector<EpochLabel>& labels,
                                   const FeatureTrack& track, double min_epoch_s,
                                   const ClassifierConfig& cfg) {
  require(!labels.empty(), "segments_from_labels: empty label sequence");
  require(labels.size() == track.windows.size(),
          "segments_from_labels: label count must match the feature track");
  require(min_epoch_s >= track.hop_s, "segments_from_labels: min_epoch must be >= hop");

  const double t0 = track.t0;
  const double t_end = track.t0 + track.series_duration_s;
  const std::size_t n = labels.size();

  std::vector<Segment> segs;
  for (std::size_t i = 0; i < n; ++i) {
    const double start = t0 + static_cast<double>(i) * track.hop_s;
    const double end = (i + 1 == n) ? t_end : t0 + static_cast<double>(i + 1) * track.hop_s;
    segs.push_back({start, end, labels[i]});
  }
  segs = coalesce(std::move(segs));

  // Absorb sub-min_epoch segments into the longer neighbor, shortest first.
  while (segs.size() > 1) {
    std::size_t victim = segs.size();
    double shortest = min_epoch_s;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (segs[i].duration() < shortest) {
        shortest = segs[i].duration();
        victim = i;
      }
    }
    if (victim == segs.size()) break;

    std::size_t host;
    if (victim == 0)
      host = 1;
    else if (victim + 1 == segs.size())
      host = victim - 1;
    else
      host = segs[victim - 1].duration() >= segs[victim + 1].duration() ? victim - 1 : victim + 1;
    segs[victim].label = segs[host].label;
    segs = coalesce(std::move(segs));
  }

  SegmentReport report;
  report.segments = std::move(segs);
  report.window_s = track.window_s;
  report.hop_s = track.hop_s;
  report.t0 = t0;
  report.t_end = t_end;
  report.thresholds = cfg;
  double chaotic = 0.0;
  for (const Segment& s : report.segments)
    if (s.label == EpochLabel::Chaotic) chaotic += s.duration();
  report.chaotic_fraction = chaotic / (t_end - t0);
  return report;
}

SegmentReport segment_series(const TimeSeries& ts, double window_s, double hop_s,
                             const ClassifierConfig& cfg, const FeatureConfig& fcfg) {
  const FeatureTrack track = window_features(ts, window_s, hop_s, fcfg);
  const auto labels = classify(track.windows, cfg);
  return segments_from_labels(labels, track, cfg.min_epoch_windows * hop_s, cfg);
}

namespace {

double percentile_halfwidth(std::vector<double>& stats) {
  std::sort(stats.begin(), stats.end());
  const std::size_t b = stats.size();
  const auto lo = static_cast<std::size_t>(std::floor(0.05 * static_cast<double>(b - 1)));
  const auto hi = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(b - 1)));
  return 0.5 * (stats[hi] - stats[lo]);
}

}  // namespace

DutyCycleFit fit_duty_cycle(const SegmentReport& report, std::uint64_t seed,
                            std::size_t n_bootstrap) {
  require(n_bootstrap >= 10, "fit_duty_cycle: n_bootstrap must be >= 10");
  require(!report.segments.empty(), "fit_duty_cycle: empty report");

  DutyCycleFit fit;
  fit.duty = report.chaotic_fraction;

  std::vector<double> onsets, durations;
  for (const Segment& s : report.segments) {
    if (s.label != EpochLabel::Chaotic) continue;
    onsets.push_back(s.start_s);
    durations.push_back(s.duration());
  }
  if (onsets.size() < 3) return fit;  // insufficient epochs; duty still reported
  fit.sufficient_epochs = true;
  fit.ts_defined = true;

  std::vector<double> spacings(onsets.size() - 1);
  for (std::size_t i = 0; i + 1 < onsets.size(); ++i) spacings[i] = onsets[i + 1] - onsets[i];
  std::vector<double> cycle_duty(spacings.size());
  for (std::size_t i = 0; i < spacings.size(); ++i)
    cycle_duty[i] = std::min(1.0, durations[i] / spacings[i]);

  auto median_of = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  fit.ts_s = median_of(spacings);

  Rng rng(sub_seed(seed, SeedTag::Bootstrap));
  std::vector<double> boot_ts(n_bootstrap), boot_duty(n_bootstrap);
  std::vector<double> resample(spacings.size());
  for (std::size_t b = 0; b < n_bootstrap; ++b) {
    double duty_sum = 0.0;
    for (std::size_t i = 0; i < spacings.size(); ++i) {
      const auto pick = static_cast<std::size_t>(rng.uniform() * spacings.size());
      resample[i] = spacings[pick];
      duty_sum += cycle_duty[pick];
    }
    boot_ts[b] = median_of(resample);
    boot_duty[b] = duty_sum / static_cast<double>(spacings.size());
  }
  fit.ts_halfwidth_s = percentile_halfwidth(boot_ts);
  fit.duty_halfwidth = percentile_halfwidth(boot_duty);
  return fit;
}

}  // namespace omchaos
