#include <cmath>
#include <complex>

#include "doctest.h"
#include "omchaos/fft.hpp"
#include "omchaos/rng.hpp"
#include "omchaos/synth.hpp"
#include "omchaos/welch.hpp"

using namespace omchaos;

namespace {

// Naive DFT oracle, kept independent of the radix-2 path.
std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(k * j) / static_cast<double>(n);
      acc += in[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

TimeSeries white_noise(std::size_t n, double sigma, std::uint64_t seed, double fs) {
  Rng rng(seed);
  TimeSeries ts{0.0, fs, std::vector<double>(n)};
  for (double& v : ts.values) v = sigma * rng.gaussian();
  return ts;
}

double total_power(const Spectrum& spec) {
  double p = 0.0;
  for (double v : spec.psd) p += v * spec.bin_width();
  return p;
}

double mean_square(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("radix-2 FFT matches the naive DFT on random input") {
  Rng rng(99);
  for (std::size_t n : {8u, 64u, 256u}) {
    std::vector<std::complex<double>> data(n);
    for (auto& c : data) c = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    auto fast = data;
    fft_radix2(fast);
    const auto slow = dft(data);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(fast[k] - slow[k]) < 1e-9 * static_cast<double>(n));
  }
}

TEST_CASE("FFT round trip returns the input") {
  Rng rng(7);
  std::vector<std::complex<double>> data(128);
  for (auto& c : data) c = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  auto copy = data;
  fft_radix2(copy);
  fft_radix2(copy, /*inverse=*/true);
  for (std::size_t k = 0; k < data.size(); ++k) CHECK(std::abs(copy[k] - data[k]) < 1e-12);
}

TEST_CASE("FFT rejects non-power-of-two sizes") {
  std::vector<std::complex<double>> data(12);
  CHECK_THROWS_AS(fft_radix2(data), PreconditionError);
}

TEST_CASE("welch: bin-centered sine concentrates its power") {
  const double fs = 100000.0, f0 = 1000.0;
  const TimeSeries ts = harmonic_series(f0, {1.0}, fs, 0.65536);  // 65536 samples
  const Spectrum spec = welch_psd(ts, 4096, 0.5);

  const double df = spec.bin_width();
  double at_peak = 0.0, total = 0.0;
  for (std::size_t k = 0; k < spec.psd.size(); ++k) {
    const double p = spec.psd[k] * df;
    total += p;
    if (std::fabs(spec.freqs[k] - f0) <= 2.0 * df) at_peak += p;
  }
  CHECK(at_peak / total > 0.99);
  CHECK(total == doctest::Approx(0.5).epsilon(0.01));  // unit sine mean square
}

TEST_CASE("welch: white noise is flat at sigma^2/(fs/2)") {
  const double fs = 50000.0, sigma = 1.7;
  const TimeSeries ts = white_noise(1 << 18, sigma, 12345, fs);
  const Spectrum spec = welch_psd(ts, 1024, 0.5);
  const double expected = sigma * sigma / (0.5 * fs);

  double mean_psd = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 1; k + 1 < spec.psd.size(); ++k) {
    mean_psd += spec.psd[k];
    ++count;
  }
  mean_psd /= static_cast<double>(count);
  CHECK(mean_psd == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("welch: DC-only series puts all power in bin zero") {
  TimeSeries ts{0.0, 1000.0, std::vector<double>(4096, 3.0)};
  const Spectrum spec = welch_psd(ts, 512, 0.5);
  const double df = spec.bin_width();
  // the taper leaks the DC line into bins 1-2 but conserves the total
  const double around_dc = (spec.psd[0] + spec.psd[1] + spec.psd[2]) * df;
  CHECK(around_dc == doctest::Approx(9.0).epsilon(1e-9));
  for (std::size_t k = 3; k < spec.psd.size(); ++k) CHECK(spec.psd[k] * df < 1e-12);
}

TEST_CASE("welch: Parseval holds within 1% on sine, noise and mixtures") {
  const double fs = 20000.0;
  const TimeSeries sine = harmonic_series(500.0, {1.0, 0.5}, fs, 3.2768);
  const TimeSeries noise = white_noise(1 << 16, 0.8, 4242, fs);
  TimeSeries mix = sine;
  for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] += noise.values[i];

  const TimeSeries* inputs[] = {&sine, &noise, &mix};
  for (const TimeSeries* ts : inputs) {
    const Spectrum spec = welch_psd(*ts, 2048, 0.5);
    CHECK(total_power(spec) == doctest::Approx(mean_square(ts->values)).epsilon(0.01));
  }
}

TEST_CASE("welch: frequency axis is strictly increasing from 0 to fs/2") {
  const TimeSeries ts = white_noise(8192, 1.0, 1, 12000.0);
  const Spectrum spec = welch_psd(ts, 512, 0.5);
  CHECK(spec.freqs.front() == 0.0);
  CHECK(spec.freqs.back() == doctest::Approx(6000.0));
  for (std::size_t k = 1; k < spec.freqs.size(); ++k) CHECK(spec.freqs[k] > spec.freqs[k - 1]);
}

TEST_CASE("welch rejects bad nfft and overlap") {
  const TimeSeries ts = white_noise(1000, 1.0, 2, 1000.0);
  CHECK_THROWS_AS(welch_psd(ts, 2048, 0.5), PreconditionError);  // longer than series
  CHECK_THROWS_AS(welch_psd(ts, 300, 0.5), PreconditionError);   // not a power of two
  CHECK_THROWS_AS(welch_psd(ts, 256, 1.0), PreconditionError);
}

TEST_CASE("parallel welch matches the serial reference bit for bit") {
  const TimeSeries ts = white_noise(1 << 15, 1.3, 31, 8000.0);
  const Spectrum a = welch_psd(ts, 1024, 0.5);
  const Spectrum b = welch_psd_serial(ts, 1024, 0.5);
  REQUIRE(a.psd.size() == b.psd.size());
  for (std::size_t k = 0; k < a.psd.size(); ++k) CHECK(a.psd[k] == b.psd[k]);
}

TEST_CASE("spectral floor: sine plus faint noise sits at the noise level") {
  const double fs = 20000.0, sigma = 1e-3;
  TimeSeries ts = harmonic_series(1000.0, {1.0}, fs, 6.5536);
  const TimeSeries noise = white_noise(ts.values.size(), sigma, 5150, fs);
  for (std::size_t i = 0; i < ts.values.size(); ++i) ts.values[i] += noise.values[i];

  const Spectrum spec = welch_psd(ts, 2048, 0.5);
  const auto mask = harmonic_mask(spec, 1000.0, 150.0);
  const double floor_db = spectral_floor(spec, mask, 200.0, 9000.0);
  const double noise_level_db = 10.0 * std::log10(sigma * sigma / (0.5 * fs));
  CHECK(std::fabs(floor_db - noise_level_db) < 1.5);

  // tens of dB below the peak
  double peak = 0.0;
  for (double v : spec.psd) peak = std::max(peak, v);
  CHECK(10.0 * std::log10(peak) - floor_db > 30.0);
}

TEST_CASE("spectral floor: white noise floor equals the flat level within 1 dB") {
  const double fs = 20000.0, sigma = 0.9;
  const TimeSeries ts = white_noise(1 << 17, sigma, 808, fs);
  const Spectrum spec = welch_psd(ts, 2048, 0.5);
  const double floor_db = spectral_floor(spec, {}, 200.0, 9000.0);
  const double level_db = 10.0 * std::log10(sigma * sigma / (0.5 * fs));
  CHECK(std::fabs(floor_db - level_db) < 1.0);
}

TEST_CASE("spectral floor rejects over-masked bands") {
  const TimeSeries ts = white_noise(8192, 1.0, 3, 2000.0);
  const Spectrum spec = welch_psd(ts, 512, 0.5);
  std::vector<bool> mask(spec.psd.size(), true);
  CHECK_THROWS_AS(spectral_floor(spec, mask, 100.0, 900.0), PreconditionError);
  CHECK_THROWS_AS(spectral_floor(spec, {}, 900.0, 100.0), PreconditionError);
}
