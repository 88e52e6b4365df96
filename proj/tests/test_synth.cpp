#include <cmath>

#include "doctest.h"
#include "omchaos/synth.hpp"

using namespace omchaos;

TEST_CASE("square wave degenerate duty cycles") {
  for (double t : {0.0, 0.1, 0.5, 0.99, 1.7, 12.3}) {
    CHECK(square_wave(t, {1.0, 0.0}) == 0);
    CHECK(square_wave(t, {1.0, 1.0}) == 1);
  }
}

TEST_CASE("square wave mean over one exact period equals the duty cycle") {
  const GatingSpec spec{1.0, 0.5};
  const int n = 1000;
  int ones = 0;
  for (int k = 0; k < n; ++k) ones += square_wave(static_cast<double>(k) / n, spec);
  CHECK(static_cast<double>(ones) / n == 0.5);

  const GatingSpec spec3{2.0, 0.3};
  ones = 0;
  for (int k = 0; k < 2 * n; ++k) ones += square_wave(2.0 * k / (2.0 * n), spec3);
  CHECK(static_cast<double>(ones) / (2 * n) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("square wave is periodic with period Ts") {
  const GatingSpec spec{0.7, 0.4};
  for (double t : {0.0, 0.1, 0.27, 0.5, 0.69}) {
    CHECK(square_wave(t, spec) == square_wave(t + spec.ts_s, spec));
    CHECK(square_wave(t, spec) == square_wave(t + 5.0 * spec.ts_s, spec));
  }
}

TEST_CASE("logistic map exact iterates at r = 4 from x0 = 1/2") {
  const TimeSeries ts = logistic_series(4.0, 0.5, 6);
  CHECK(ts.values[0] == 0.5);
  CHECK(ts.values[1] == 1.0);
  CHECK(ts.values[2] == 0.0);
  CHECK(ts.values[3] == 0.0);
  CHECK(ts.values[4] == 0.0);
}

TEST_CASE("logistic map settles on a period-2 cycle at r = 3.2") {
  const TimeSeries ts = logistic_series(3.2, 0.41, 1100);
  const double a = ts.values[1096];
  const double b = ts.values[1097];
  CHECK(std::fabs(ts.values[1098] - a) < 1e-9);
  CHECK(std::fabs(ts.values[1099] - b) < 1e-9);
  CHECK(std::fabs(a - b) > 0.1);  // genuinely two distinct values
}

TEST_CASE("logistic map stays inside the unit interval at r = 4") {
  const TimeSeries ts = logistic_series(4.0, 0.3, 5000);
  for (double v : ts.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("logistic parameter validation") {
  CHECK_THROWS_AS(logistic_series(4.2, 0.5, 10), PreconditionError);
  CHECK_THROWS_AS(logistic_series(4.0, 0.0, 10), PreconditionError);
  CHECK_THROWS_AS(logistic_series(4.0, 1.0, 10), PreconditionError);
  CHECK_THROWS_AS(logistic_series(4.0, 0.5, 0), PreconditionError);
}

TEST_CASE("harmonic series with one weight is a pure sine") {
  const TimeSeries ts = harmonic_series(1000.0, {1.0}, 100000.0, 0.01);
  REQUIRE(ts.values.size() == 1000);
  for (std::size_t k = 0; k < ts.values.size(); ++k) {
    const double expected = std::sin(2.0 * M_PI * 1000.0 * k / 100000.0);
    CHECK(ts.values[k] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("harmonic series with zero weights is identically zero") {
  const TimeSeries ts = harmonic_series(1000.0, {0.0}, 100000.0, 0.01);
  for (double v : ts.values) CHECK(v == 0.0);
}

TEST_CASE("harmonic series repeats its first period bit-exactly") {
  const double f0 = 1000.0, fs = 20000.0;
  const TimeSeries ts = harmonic_series(f0, {1.0, 0.5}, fs, 10.0 / f0);
  const std::size_t period = static_cast<std::size_t>(fs / f0);
  REQUIRE(ts.values.size() == 10 * period);
  for (std::size_t k = period; k < ts.values.size(); ++k)
    CHECK(ts.values[k] == ts.values[k % period]);
}

TEST_CASE("harmonic series rejects aliasing configurations") {
  CHECK_THROWS_AS(harmonic_series(1000.0, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0},
                                  20000.0, 0.01),
                  PreconditionError);
}

namespace {

SourcePair test_sources(double fs, double duration) {
  const auto n = static_cast<std::size_t>(std::llround(duration * fs));
  SourcePair sp;
  sp.periodic = harmonic_series(1000.0, {1.0}, fs, duration);
  sp.chaotic = logistic_series(4.0, 0.37, n, fs);
  return sp;
}

}  // namespace

TEST_CASE("synthesis with degenerate duty reproduces a single source") {
  const double fs = 20000.0, duration = 1.5;
  const SourcePair sp = test_sources(fs, duration);
  const GatingSpec all_periodic{0.5, 0.0};
  const GatingSpec all_chaotic{0.5, 1.0};

  const SynthesisResult rp = synthesize_intermittent(sp, all_periodic, duration, fs);
  const SynthesisResult rc = synthesize_intermittent(sp, all_chaotic, duration, fs);

  std::vector<double> xp = sp.periodic.values;
  std::vector<double> xc(sp.chaotic.values.begin(),
                         sp.chaotic.values.begin() + rp.series.size());
  normalize_rms(xp);
  normalize_rms(xc);
  for (std::size_t k = 0; k < rp.series.size(); ++k) {
    CHECK(rp.series.values[k] == xp[k]);
    CHECK(rp.labels[k] == 0);
    CHECK(rc.series.values[k] == xc[k]);
    CHECK(rc.labels[k] == 1);
  }
}

TEST_CASE("ground-truth chaotic fraction matches the duty cycle") {
  const double fs = 20000.0, duration = 4.0;
  const SourcePair sp = test_sources(fs, duration);
  const SynthesisResult r = synthesize_intermittent(sp, GatingSpec{1.0, 0.5}, duration, fs);
  double frac = 0.0;
  for (int l : r.labels) frac += l;
  frac /= static_cast<double>(r.labels.size());
  CHECK(std::fabs(frac - 0.5) <= 1.0 / (fs * duration) + 1e-12);
}

TEST_CASE("label track equals the square wave at sample times") {
  const double fs = 20000.0, duration = 2.0;
  const SourcePair sp = test_sources(fs, duration);
  const GatingSpec spec{0.5, 0.31};
  const SynthesisResult r = synthesize_intermittent(sp, spec, duration, fs, 77);
  for (std::size_t k = 0; k < r.labels.size(); ++k) {
    const double t = static_cast<double>(k) / fs + r.gate_phase_s;
    CHECK(r.labels[k] == square_wave(t, spec));
  }
}

TEST_CASE("synthesis rejects mismatched sample rates") {
  SourcePair sp = test_sources(20000.0, 1.5);
  sp.chaotic.fs = 10000.0;
  CHECK_THROWS_AS(synthesize_intermittent(sp, GatingSpec{0.5, 0.5}, 1.5, 20000.0),
                  PreconditionError);
}

TEST_CASE("synthesis rejects too-short durations and too-coarse gates") {
  const SourcePair sp = test_sources(20000.0, 1.5);
  CHECK_THROWS_AS(synthesize_intermittent(sp, GatingSpec{1.0, 0.5}, 1.5, 20000.0),
                  PreconditionError);
  CHECK_THROWS_AS(synthesize_intermittent(sp, GatingSpec{0.001, 0.5}, 1.5, 20000.0),
                  PreconditionError);
}
