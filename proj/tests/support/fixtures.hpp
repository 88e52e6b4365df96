#pragma once

#include <cstdint>

#include "omchaos/rng.hpp"
#include "omchaos/synth.hpp"

namespace omchaos::fixtures {

// Shared synthesis fixture family. Defaults are sized so that segmentation
// windows hold 20 fundamental periods and one gate cycle spans 200 windows.
struct FixtureSpec {
  double fs = 20000.0;
  double f0 = 1000.0;          // periodic fundamental; window = 20/f0 = 20 ms
  double ts_s = 4.0;           // gate cycle = 200 windows at window/2 hop
  double duration = 12.0;      // >= 3 cycles
  double noise_sigma = 1e-3;   // additive measurement noise after mixing
  std::uint64_t seed = 2024;
};

inline TimeSeries make_fixture(double duty, const FixtureSpec& fx = {}) {
  const auto n = static_cast<std::size_t>(fx.duration * fx.fs + 0.5);
  SourcePair sources;
  sources.periodic = harmonic_series(fx.f0, {1.0, 0.5, 0.25}, fx.fs, fx.duration);
  sources.chaotic = logistic_series(4.0, 0.37, n, fx.fs);
  SynthesisResult r =
      synthesize_intermittent(sources, GatingSpec{fx.ts_s, duty}, fx.duration, fx.fs, fx.seed);
  if (fx.noise_sigma > 0.0) {
    Rng rng(sub_seed(fx.seed, SeedTag::Fixture));
    for (double& v : r.series.values) v += fx.noise_sigma * rng.gaussian();
  }
  return r.series;
}

inline SynthesisResult make_labeled_fixture(double duty, const FixtureSpec& fx = {}) {
  const auto n = static_cast<std::size_t>(fx.duration * fx.fs + 0.5);
  SourcePair sources;
  sources.periodic = harmonic_series(fx.f0, {1.0, 0.5, 0.25}, fx.fs, fx.duration);
  sources.chaotic = logistic_series(4.0, 0.37, n, fx.fs);
  SynthesisResult r =
      synthesize_intermittent(sources, GatingSpec{fx.ts_s, duty}, fx.duration, fx.fs, fx.seed);
  if (fx.noise_sigma > 0.0) {
    Rng rng(sub_seed(fx.seed, SeedTag::Fixture));
    for (double& v : r.series.values) v += fx.noise_sigma * rng.gaussian();
  }
  return r;
}

}  // namespace omchaos::fixtures
