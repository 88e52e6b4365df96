#include "doctest.h"
#include "omchaos/integrate.hpp"

using namespace omchaos;

namespace {

// Fast-turnaround parameters for onset scans.
SystemParams scan_params() {
  SystemParams p = default_params();
  p.delta = 0.5 * p.omega_m;
  p.g0 = 0.3 * p.omega_m;
  p.t_transient = 60.0e-6;
  p.t_record = 20.0e-6;
  return p;
}

}  // namespace

TEST_CASE("no coupling means no threshold in any range") {
  SystemParams p = scan_params();
  p.g0 = 0.0;
  const ThresholdResult res = find_threshold(p, 3.0e6, 1.0e8, 8);
  CHECK_FALSE(res.drive.has_value());
}

TEST_CASE("range entirely below onset reports no threshold") {
  const SystemParams p = scan_params();
  const ThresholdResult res = find_threshold(p, 1.0e4, 1.0e5, 8);
  CHECK_FALSE(res.drive.has_value());
}

TEST_CASE("threshold scan brackets the oscillation onset and is repeatable") {
  const SystemParams p = scan_params();
  const ThresholdResult a = find_threshold(p, 3.0e6, 1.0e8, 12);
  REQUIRE(a.drive.has_value());

  // amplitude criterion actually separates the two sides (the baseline is
  // carried quadratically along the scan)
  auto onset_level = [&](double drive) {
    const double r = drive / 3.0e6;
    return 10.0 * std::max(a.baseline_amplitude * r * r, 1e-9);
  };
  CHECK(oscillation_amplitude(p, *a.drive) > onset_level(*a.drive));
  CHECK(oscillation_amplitude(p, *a.drive * 0.8) < onset_level(*a.drive * 0.8));

  const ThresholdResult b = find_threshold(p, 3.0e6, 1.0e8, 12);
  REQUIRE(b.drive.has_value());
  CHECK(*a.drive == *b.drive);  // deterministic scan
}

TEST_CASE("threshold scan validates its inputs") {
  const SystemParams p = scan_params();
  CHECK_THROWS_AS(find_threshold(p, -1.0, 2.0, 8), PreconditionError);
  CHECK_THROWS_AS(find_threshold(p, 1.0, 0.5, 8), PreconditionError);
  CHECK_THROWS_AS(find_threshold(p, 0.1, 2.0, 4), PreconditionError);
}
