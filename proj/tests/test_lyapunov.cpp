#include <cmath>

#include "doctest.h"
#include "omchaos/lyapunov.hpp"

using namespace omchaos;

TEST_CASE("logistic exponent at r = 4 equals ln 2 within 1%") {
  const MapLyapunovResult res = logistic_lyapunov(4.0, 0.123456, 4000000);
  CHECK(std::fabs(res.exponent - std::log(2.0)) < 0.01 * std::log(2.0));
}

TEST_CASE("logistic exponent at r = 3.2 is negative on the period-2 attractor") {
  const MapLyapunovResult res = logistic_lyapunov(3.2, 0.41, 100000);
  CHECK(res.exponent < -0.5);
  // analytic value on the 2-cycle: mean of ln|r(1-2x)| over the two points
  const double x1 = 0.5130445095326298;
  const double x2 = 3.2 * x1 * (1.0 - x1);
  const double expected =
      0.5 * (std::log(std::fabs(3.2 * (1.0 - 2.0 * x1))) +
             std::log(std::fabs(3.2 * (1.0 - 2.0 * x2))));
  CHECK(res.exponent == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("identity map has exponent exactly zero") {
  const MapLyapunovResult res = map_lyapunov([](double x) { return x; },
                                             [](double) { return 1.0; }, 0.5, 10000);
  CHECK(res.exponent == 0.0);
  CHECK(res.clamped_terms == 0);
}

TEST_CASE("zero derivatives are clamped and counted") {
  // tent-like map whose derivative is exactly 0 at the fixed point it reaches
  const MapLyapunovResult res = map_lyapunov([](double) { return 0.5; },
                                             [](double) { return 0.0; }, 0.5, 10000, 0);
  CHECK(res.clamped_terms == 10000);
  CHECK(res.exponent == doctest::Approx(std::log(1e-12)));
}

TEST_CASE("map_lyapunov enforces the sample-count precondition") {
  CHECK_THROWS_AS(map_lyapunov([](double x) { return x; }, [](double) { return 1.0; }, 0.5, 100),
                  PreconditionError);
}

TEST_CASE("benettin exponent of the quiet linear system is -gamma_m/2") {
  SystemParams p = default_params();
  p.g0 = 0.0;
  p.drive_amplitude = 0.0;
  p.t_transient = 0.0;
  const double t_total = 400.0e-6;
  const LyapunovResult res = lyapunov_benettin(p, State{0.0, 0.0, 0.1, 0.0}, t_total, 2.0e-6);
  const double expected = -0.5 * p.gamma_m;
  CHECK(std::fabs(res.exponent - expected) < 0.05 * std::fabs(expected));
  CHECK(res.trace.size() > 100);
}

TEST_CASE("benettin convergence trace settles") {
  SystemParams p = default_params();
  p.g0 = 0.0;
  p.drive_amplitude = 1.0;
  p.t_transient = 0.0;
  const LyapunovResult res = lyapunov_benettin(p, State{}, 200.0e-6, 2.0e-6);
  // the running estimate over the last half stays within 10% of the final value
  const double final = res.exponent;
  for (std::size_t i = res.trace.size() / 2; i < res.trace.size(); ++i)
    CHECK(std::fabs(res.trace[i].second - final) < 0.1 * std::fabs(final));
}

TEST_CASE("benettin validates the renormalization interval") {
  SystemParams p = default_params();
  CHECK_THROWS_AS(lyapunov_benettin(p, State{}, 10.0e-6, 9.0e-6), PreconditionError);
}
