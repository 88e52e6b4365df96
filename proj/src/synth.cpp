#include "omchaos/synth.hpp"

#include <cmath>

#include "omchaos/rng.hpp"

namespace omchaos {

int square_wave(double t, const GatingSpec& spec) {
  spec.validate();
  if (spec.duty >= 1.0) return 1;
  if (spec.duty <= 0.0) return 0;
  double phase = std::fmod(t, spec.ts_s);
  if (phase < 0.0) phase += spec.ts_s;
  return phase < spec.t0_s() ? 1 : 0;
}

TimeSeries logistic_series(double r, double x0, std::size_t n, double fs) {
  require(r > 0.0 && r <= 4.0, "logistic_series: r must be in (0, 4]");
  require(x0 > 0.0 && x0 < 1.0, "logistic_series: x0 must be in (0, 1)");
  require(n >= 1, "logistic_series: n must be >= 1");
  TimeSeries out{0.0, fs, {}};
  out.values.reserve(n);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    out.values.push_back(x);
    x = r * x * (1.0 - x);
  }
  return out;
}

TimeSeries harmonic_series(double f0, const std::vector<double>& weights, double fs,
                           double duration) {
  require(f0 > 0.0 && fs > 0.0 && duration > 0.0,
          "harmonic_series: f0, fs and duration must be > 0");
  require(!weights.empty(), "harmonic_series: weights must be non-empty");
  require(f0 * static_cast<double>(weights.size()) < 0.5 * fs,
          "harmonic_series: highest harmonic must stay below fs/2");
  const std::size_t n = static_cast<std::size_t>(std::llround(duration * fs));
  TimeSeries out{0.0, fs, std::vector<double>(n, 0.0)};

  // When fs/f0 is an integer the sample index is reduced modulo one period
  // before the phase is formed, which keeps repeats exact.
  const double ratio = fs / f0;
  const std::size_t period = ratio == std::floor(ratio) ? static_cast<std::size_t>(ratio) : 0;

  for (std::size_t h = 0; h < weights.size(); ++h) {
    if (weights[h] == 0.0) continue;
    const double w = 2.0 * M_PI * f0 * static_cast<double>(h + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = period ? k % period : k;
      out.values[k] += weights[h] * std::sin(w * static_cast<double>(idx) / fs);
    }
  }
  return out;
}

void normalize_rms(std::vector<double>& values) {
  if (values.empty()) return;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ms = 0.0;
  for (double& v : values) {
    v -= mean;
    ms += v * v;
  }
  ms /= static_cast<double>(values.size());
  if (ms <= 0.0) return;
  const double inv = 1.0 / std::sqrt(ms);
  for (double& v : values) v *= inv;
}

SynthesisResult synthesize_intermittent(const SourcePair& sources, const GatingSpec& spec,
                                        double duration, double fs,
                                        std::uint64_t gate_phase_seed) {
  spec.validate();
  require(fs > 0.0, "synthesize_intermittent: fs must be > 0");
  require(sources.periodic.fs == sources.chaotic.fs,
          "synthesize_intermittent: source sample rates differ");
  require(duration >= 3.0 * spec.ts_s,
          "synthesize_intermittent: duration must cover at least 3 gate cycles");
  require(fs * spec.ts_s >= 100.0,
          "synthesize_intermittent: need at least 100 samples per gate cycle");

  const std::size_t n = static_cast<std::size_t>(std::llround(duration * fs));
  require(sources.periodic.values.size() >= n && sources.chaotic.values.size() >= n,
          "synthesize_intermittent: sources shorter than requested duration");

  std::vector<double> xp(sources.periodic.values.begin(), sources.periodic.values.begin() + n);
  std::vector<double> xc(sources.chaotic.values.begin(), sources.chaotic.values.begin() + n);
  for (double v : xp) require(std::isfinite(v), "synthesize_intermittent: periodic source not finite");
  for (double v : xc) require(std::isfinite(v), "synthesize_intermittent: chaotic source not finite");
  normalize_rms(xp);
  normalize_rms(xc);

  SynthesisResult out;
  out.spec = spec;
  if (gate_phase_seed != 0) {
    Rng rng(sub_seed(gate_phase_seed, SeedTag::GatePhase));
    out.gate_phase_s = rng.uniform() * spec.ts_s;
  }

  out.series.t0 = 0.0;
  out.series.fs = fs;
  out.series.values.resize(n);
  out.labels.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / fs + out.gate_phase_s;
    const int s = square_wave(t, spec);
    out.labels[k] = s;
    out.series.values[k] = s ? xc[k] : xp[k];
  }
  return out;
}

}  // namespace omchaos
