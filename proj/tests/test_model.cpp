#include <cmath>
#include <complex>

#include "doctest.h"
#include "omchaos/integrate.hpp"
#include "omchaos/model.hpp"

using namespace omchaos;

namespace {

SystemParams quiet_params() {
  SystemParams p = default_params();
  p.g0 = 0.0;
  p.drive_amplitude = 0.0;
  return p;
}

}  // namespace

TEST_CASE("derivatives vanish at the undriven fixed point") {
  const SystemParams p = quiet_params();
  const StateDerivative d = derivatives(State{}, p, 0.0);
  CHECK(d.a_re == 0.0);
  CHECK(d.a_im == 0.0);
  CHECK(d.x == 0.0);
  CHECK(d.v == 0.0);
}

TEST_CASE("derivatives vanish on the linear-cavity steady state") {
  SystemParams p = quiet_params();
  p.delta = 3.0e7;
  p.drive_amplitude = 2.0;
  // a_ss = sqrt(kappa_ex) * drive / (kappa/2 - i delta)
  const std::complex<double> a_ss =
      std::sqrt(p.kappa_ex) * p.drive_amplitude / std::complex<double>(0.5 * p.kappa, -p.delta);
  const State s{a_ss.real(), a_ss.imag(), 0.0, 0.0};
  const StateDerivative d = derivatives(s, p, 0.0);
  const double scale = std::abs(a_ss) * p.kappa;
  CHECK(std::fabs(d.a_re) / scale < 1e-14);
  CHECK(std::fabs(d.a_im) / scale < 1e-14);
}

TEST_CASE("decoupled oscillator feels only the restoring force") {
  SystemParams p = quiet_params();
  p.drive_amplitude = 1.5;
  const State s{0.0, 0.0, 1.0, 0.0};
  const StateDerivative d = derivatives(s, p, 0.0);
  CHECK(d.v == doctest::Approx(-p.omega_m).epsilon(1e-15));
  CHECK(d.x == 0.0);
}

TEST_CASE("derivatives reject non-finite state naming the field") {
  const SystemParams p = quiet_params();
  State s;
  s.x = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(derivatives(s, p, 0.0), "State.x is not finite", PreconditionError);
}

TEST_CASE("resonant linear cavity relaxes to the Lorentzian steady state") {
  SystemParams p = quiet_params();
  p.delta = 0.0;
  p.drive_amplitude = 3.0;
  p.t_transient = 20.0 / p.kappa;
  p.t_record = 20.0 / p.kappa;
  const Trajectory traj = integrate(p, State{});
  const double expected =
      4.0 * p.kappa_ex * p.drive_amplitude * p.drive_amplitude / (p.kappa * p.kappa);
  const double got = traj.intensity.back();
  CHECK(std::fabs(got - expected) / expected < 1e-6);
}

TEST_CASE("undriven mechanical ringdown decays at gamma_m/2") {
  SystemParams p = quiet_params();
  p.decimation = 1;
  p.t_transient = 0.0;
  const double period = 2.0 * M_PI / p.omega_m;
  p.t_record = 60.0 * period;
  const Trajectory traj = integrate(p, State{0.0, 0.0, 1.0, 0.0});

  // log-amplitude slope over parabolic-refined peaks of x(t), fitted across
  // 10 mechanical periods starting somewhere inside the record
  std::vector<double> peak_t, peak_log;
  for (std::size_t i = 1; i + 1 < traj.x.size(); ++i) {
    if (!(traj.x[i] > traj.x[i - 1] && traj.x[i] >= traj.x[i + 1])) continue;
    const double y0 = traj.x[i - 1], y1 = traj.x[i], y2 = traj.x[i + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    const double peak = denom < 0.0 ? y1 - 0.125 * (y2 - y0) * (y2 - y0) / denom : y1;
    peak_t.push_back(traj.t0 + static_cast<double>(i) / traj.fs);
    peak_log.push_back(std::log(peak));
    if (peak_t.size() >= 11) break;
  }
  REQUIRE(peak_t.size() >= 11);
  const std::size_t n = peak_t.size();
  double mt = 0.0, ml = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += peak_t[i];
    ml += peak_log[i];
  }
  mt /= n;
  ml /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (peak_t[i] - mt) * (peak_log[i] - ml);
    den += (peak_t[i] - mt) * (peak_t[i] - mt);
  }
  const double rate = -num / den;
  CHECK(rate == doctest::Approx(0.5 * p.gamma_m).epsilon(0.01));
}

TEST_CASE("integrator error scales as dt^4 on the analytic cavity transient") {
  SystemParams p = quiet_params();
  p.delta = 0.0;
  p.drive_amplitude = 1.0;
  p.t_transient = 0.0;
  p.decimation = 1;
  p.t_record = 5.0 / p.kappa;

  auto max_error = [&p](double dt) {
    SystemParams q = p;
    q.dt = dt;
    const Trajectory traj = integrate(q, State{});
    const double a_inf = 2.0 * std::sqrt(q.kappa_ex) * q.drive_amplitude / q.kappa;
    double err = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double t = traj.t0 + static_cast<double>(i) / traj.fs;
      const double a = a_inf * (1.0 - std::exp(-0.5 * q.kappa * t));
      err = std::max(err, std::fabs(traj.intensity[i] - a * a));
    }
    return err;
  };

  const double e1 = max_error(1.0e-9);
  const double e2 = max_error(0.5e-9);
  const double ratio = e1 / e2;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("identical params, seed and state give bit-identical trajectories") {
  SystemParams p = quiet_params();
  p.drive_amplitude = 1.0;
  p.g0 = 0.2 * p.omega_m;
  p.delta = 0.5 * p.omega_m;
  p.noise_sigma = 1.0e3;
  p.t_transient = 5.0e-6;
  p.t_record = 10.0e-6;
  const Trajectory a = integrate(p, State{}, 1234);
  const Trajectory b = integrate(p, State{}, 1234);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.intensity[i] == b.intensity[i]);
    CHECK(a.x[i] == b.x[i]);
    CHECK(a.v[i] == b.v[i]);
  }
}

TEST_CASE("recorded intensity is non-negative") {
  SystemParams p = quiet_params();
  p.drive_amplitude = 2.0;
  p.delta = 0.8 * p.omega_m;
  p.g0 = 0.3 * p.omega_m;
  p.t_transient = 2.0e-6;
  p.t_record = 20.0e-6;
  const Trajectory traj = integrate(p, State{});
  for (double v : traj.intensity) CHECK(v >= 0.0);
}

TEST_CASE("sample count and rate follow the contract") {
  SystemParams p = quiet_params();
  p.t_record = 33.0e-6;
  const Trajectory traj = integrate(p, State{});
  CHECK(traj.fs == 1.0 / (p.dt * p.effective_decimation()));
  CHECK(static_cast<long long>(traj.size()) == std::llround(p.t_record * traj.fs));
}

TEST_CASE("divergence raises an error naming the blow-up time") {
  SystemParams p = quiet_params();
  p.delta = 1.0e12;  // far outside the RK4 stability region at this dt
  p.drive_amplitude = 1.0;
  p.t_transient = 0.0;
  p.t_record = 1.0e-6;
  CHECK_THROWS_AS(integrate(p, State{}), DivergenceError);
  try {
    integrate(p, State{});
  } catch (const DivergenceError& e) {
    CHECK(e.t_blowup_s > 0.0);
    CHECK(std::string(e.what()).find("diverged at t") != std::string::npos);
  }
}

TEST_CASE("dt stability guard rejects oversized steps") {
  SystemParams p = quiet_params();
  p.dt = 1.0e-8;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
}

TEST_CASE("kappa_ex bounds are enforced") {
  SystemParams p = quiet_params();
  p.kappa_ex = 2.0 * p.kappa;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p.kappa_ex = 0.0;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
}
