#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "omchaos/features.hpp"
#include "omchaos/rng.hpp"
#include "omchaos/synth.hpp"
#include "support/fixtures.hpp"

using namespace omchaos;

namespace {

TimeSeries white_noise(std::size_t n, double sigma, std::uint64_t seed, double fs) {
  Rng rng(seed);
  TimeSeries ts{0.0, fs, std::vector<double>(n)};
  for (double& v : ts.values) v = sigma * rng.gaussian();
  return ts;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

}  // namespace

TEST_CASE("spectral flatness separates lines from broadband in every window") {
  const double fs = 20000.0;
  const TimeSeries sine = harmonic_series(1000.0, {1.0}, fs, 2.0);
  const TimeSeries noise = white_noise(40000, 1.0, 99, fs);

  const FeatureTrack ft_sine = window_features(sine, 0.02, 0.01);
  const FeatureTrack ft_noise = window_features(noise, 0.02, 0.01);
  REQUIRE(ft_sine.windows.size() > 100);
  for (const auto& w : ft_sine.windows) CHECK(w.spectral_flatness < 0.05);
  for (const auto& w : ft_noise.windows) CHECK(w.spectral_flatness > 0.5);
}

TEST_CASE("0-1 statistic discriminates the logistic regimes") {
  const TimeSeries chaotic = logistic_series(4.0, 0.37, 10000);
  const TimeSeries periodic = logistic_series(3.2, 0.37, 10000);

  const double k_chaotic = zero_one_k(chaotic.values, 64, 7);
  const double k_periodic = zero_one_k(periodic.values, 64, 7);
  CHECK(k_chaotic > 0.95);
  CHECK(k_periodic < 0.1);
}

TEST_CASE("0-1 statistic is near zero for a sine") {
  const TimeSeries sine = harmonic_series(500.0, {1.0}, 20000.0, 0.5);
  CHECK(zero_one_k(sine.values, 64, 3) < 0.1);
}

TEST_CASE("return error is tiny for a clean tone and large for logistic noise") {
  const double fs = 20000.0;
  const TimeSeries sine = harmonic_series(1000.0, {1.0}, fs, 0.02);
  const TimeSeries chaotic = logistic_series(4.0, 0.37, 400);
  const double e_sine = period_return_error(sine.values);
  const double e_chaotic = period_return_error(chaotic.values);
  CHECK(e_sine < 0.02);
  CHECK(e_chaotic > 0.3);
}

TEST_CASE("constant window scores zero return error") {
  std::vector<double> flat(256, 1.0);
  CHECK(period_return_error(flat) == 0.0);
}

TEST_CASE("feature ranges hold on mixed fixtures") {
  const TimeSeries mix = fixtures::make_fixture(0.5);
  const FeatureTrack track = window_features(mix, 0.02, 0.01);
  for (const auto& w : track.windows) {
    CHECK(w.spectral_flatness >= 0.0);
    CHECK(w.spectral_flatness <= 1.0);
    CHECK(w.zero_one_k >= 0.0);
    CHECK(w.zero_one_k <= 1.0);
    CHECK(w.period_return_error >= 0.0);
    CHECK(std::isfinite(w.period_return_error));
  }
}

TEST_CASE("parallel feature extraction matches the serial reference bit for bit") {
  const TimeSeries mix = fixtures::make_fixture(0.5, []{
    fixtures::FixtureSpec fx;
    fx.duration = 12.0;
    return fx;
  }());
  const FeatureTrack a = window_features(mix, 0.02, 0.01);
  const FeatureTrack b = window_features_serial(mix, 0.02, 0.01);
  REQUIRE(a.windows.size() == b.windows.size());
  for (std::size_t i = 0; i < a.windows.size(); ++i) {
    CHECK(a.windows[i].spectral_flatness == b.windows[i].spectral_flatness);
    CHECK(a.windows[i].zero_one_k == b.windows[i].zero_one_k);
    CHECK(a.windows[i].period_return_error == b.windows[i].period_return_error);
    CHECK(a.windows[i].t_start == b.windows[i].t_start);
  }
}

TEST_CASE("window geometry preconditions") {
  const TimeSeries sine = harmonic_series(1000.0, {1.0}, 20000.0, 0.1);
  CHECK_THROWS_AS(window_features(sine, 1.0, 0.5), PreconditionError);    // window > series
  CHECK_THROWS_AS(window_features(sine, 0.02, 0.015), PreconditionError); // hop > window/2
}

TEST_CASE("median feature values separate the pure fixtures") {
  const TimeSeries periodic = fixtures::make_fixture(0.0);
  const TimeSeries chaotic = fixtures::make_fixture(1.0);
  const FeatureTrack fp = window_features(periodic, 0.02, 0.01);
  const FeatureTrack fc = window_features(chaotic, 0.02, 0.01);

  std::vector<double> flat_p, flat_c, k_p, k_c, ret_p, ret_c;
  for (const auto& w : fp.windows) {
    flat_p.push_back(w.spectral_flatness);
    k_p.push_back(w.zero_one_k);
    ret_p.push_back(w.period_return_error);
  }
  for (const auto& w : fc.windows) {
    flat_c.push_back(w.spectral_flatness);
    k_c.push_back(w.zero_one_k);
    ret_c.push_back(w.period_return_error);
  }
  // defaults in ClassifierConfig sit between these medians
  CHECK(median_of(flat_p) < 0.1);
  CHECK(median_of(flat_c) > 0.4);
  CHECK(median_of(k_p) < 0.3);
  CHECK(median_of(k_c) > 0.7);
  CHECK(median_of(ret_p) < 0.03);
  CHECK(median_of(ret_c) > 0.18);
}

TEST_CASE("auto window covers 20 dominant periods") {
  const TimeSeries sine = harmonic_series(1000.0, {1.0}, 20000.0, 2.0);
  const double w = auto_window_seconds(sine);
  CHECK(w == doctest::Approx(0.02).epsilon(0.05));
}
