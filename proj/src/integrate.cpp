#include "omchaos/integrate.hpp"

#include <cmath>

#include "omchaos/rng.hpp"

namespace omchaos {

namespace {

constexpr double kBlowupLimit = 1.0e12;

struct Rk4Context {
  const SystemParams& p;
  const Stimulus* stim;

  double force_at(double t) const {
    return (stim && stim->force) ? stim->force(t) : 0.0;
  }
  double drive_at(double t) const {
    return (stim && stim->drive_mod) ? stim->drive_mod(t) : 1.0;
  }

  StateDerivative rhs(const State& s, double t) const {
    if (stim && stim->drive_mod) {
      SystemParams pm = p;
      pm.drive_amplitude = p.drive_amplitude * drive_at(t);
      return derivatives(s, pm, t, force_at(t));
    }
    return derivatives(s, p, t, force_at(t));
  }

  State step(const State& s, double t, double dt) const {
    const StateDerivative k1 = rhs(s, t);
    State s2{s.a_re + 0.5 * dt * k1.a_re, s.a_im + 0.5 * dt * k1.a_im, s.x + 0.5 * dt * k1.x,
             s.v + 0.5 * dt * k1.v};
    const StateDerivative k2 = rhs(s2, t + 0.5 * dt);
    State s3{s.a_re + 0.5 * dt * k2.a_re, s.a_im + 0.5 * dt * k2.a_im, s.x + 0.5 * dt * k2.x,
             s.v + 0.5 * dt * k2.v};
    const StateDerivative k3 = rhs(s3, t + 0.5 * dt);
    State s4{s.a_re + dt * k3.a_re, s.a_im + dt * k3.a_im, s.x + dt * k3.x, s.v + dt * k3.v};
    const StateDerivative k4 = rhs(s4, t + dt);
    const double w = dt / 6.0;
    return {s.a_re + w * (k1.a_re + 2.0 * k2.a_re + 2.0 * k3.a_re + k4.a_re),
            s.a_im + w * (k1.a_im + 2.0 * k2.a_im + 2.0 * k3.a_im + k4.a_im),
            s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            s.v + w * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
  }
};

void check_blowup(const State& s, double t) {
  const double m = std::max(std::max(std::fabs(s.a_re), std::fabs(s.a_im)),
                            std::max(std::fabs(s.x), std::fabs(s.v)));
  if (!(m < kBlowupLimit) || !s.finite())
    throw DivergenceError("integration diverged at t = " + std::to_string(t) + " s", t);
}

}  // namespace

Trajectory integrate(const SystemParams& p, const State& s0, std::uint64_t seed,
                     const Stimulus* stimulus) {
  p.validate();
  if (!s0.finite()) throw PreconditionError("initial State has non-finite components");

  const int decim = p.effective_decimation();
  const double fs = 1.0 / (p.dt * decim);
  const long long n_skip = std::llround(p.t_transient / p.dt);
  const long long n_rec = std::llround(p.t_record * fs);
  if (n_rec < 1) throw PreconditionError("t_record too short: no samples to record");

  Rk4Context ctx{p, stimulus};
  const bool noisy = p.noise_sigma > 0.0;
  Rng noise_rng(sub_seed(seed, SeedTag::Noise));
  const double noise_step = p.noise_sigma * std::sqrt(p.dt);

  Trajectory traj;
  traj.t0 = static_cast<double>(n_skip) * p.dt;
  traj.fs = fs;
  traj.intensity.reserve(n_rec);
  traj.x.reserve(n_rec);
  traj.v.reserve(n_rec);
  traj.params_hash = p.hash();
  traj.seed = seed;

  State s = s0;
  long long step_index = 0;
  auto advance = [&]() {
    const double t = static_cast<double>(step_index) * p.dt;
    s = ctx.step(s, t, p.dt);
    if (noisy) s.v += noise_step * noise_rng.gaussian();
    ++step_index;
    check_blowup(s, static_cast<double>(step_index) * p.dt);
  };

  while (step_index < n_skip) advance();

  traj.intensity.push_back(s.intensity());
  traj.x.push_back(s.x);
  traj.v.push_back(s.v);
  while (static_cast<long long>(traj.intensity.size()) < n_rec) {
    for (int i = 0; i < decim; ++i) advance();
    traj.intensity.push_back(s.intensity());
    traj.x.push_back(s.x);
    traj.v.push_back(s.v);
  }
  return traj;
}

double oscillation_amplitude(const SystemParams& p, double drive) {
  SystemParams q = p;
  q.drive_amplitude = drive;
  const Trajectory traj = integrate(q, State{});
  double lo = traj.x[0], hi = traj.x[0];
  for (double xi : traj.x) {
    lo = std::min(lo, xi);
    hi = std::max(hi, xi);
  }
  return 0.5 * (hi - lo);
}

ThresholdResult find_threshold(const SystemParams& p, double drive_lo, double drive_hi,
                               int n_steps) {
  if (!(drive_lo > 0.0 && drive_hi > drive_lo))
    throw PreconditionError("find_threshold: drive range must be positive and increasing");
  if (n_steps < 8) throw PreconditionError("find_threshold: n_steps must be >= 8");

  const double scan_step = (drive_hi - drive_lo) / (n_steps - 1);
  std::vector<double> amps(n_steps);
  for (int i = 0; i < n_steps; ++i)
    amps[i] = oscillation_amplitude(p, drive_lo + i * scan_step);

  ThresholdResult result;
  result.baseline_amplitude = amps[0];

  // The subthreshold response scales quadratically with drive, so the
  // baseline is carried along the scan as amps[0] * (drive/drive_lo)^2; the
  // onset is a 10x jump above that trend.
  auto onset_level = [&](double drive) {
    const double ratio = drive / drive_lo;
    return 10.0 * std::max(amps[0] * ratio * ratio, 1e-9);
  };

  int first = -1;
  for (int i = 0; i < n_steps; ++i) {
    if (amps[i] > onset_level(drive_lo + i * scan_step)) {
      first = i;
      break;
    }
  }
  if (first < 0) return result;  // no threshold in range
  if (first == 0) {
    result.drive = drive_lo;
    return result;
  }

  double lo = drive_lo + (first - 1) * scan_step;
  double hi = drive_lo + first * scan_step;
  const double width_target = scan_step / 128.0;
  while (hi - lo > width_target) {
    const double mid = 0.5 * (lo + hi);
    if (oscillation_amplitude(p, mid) > onset_level(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.drive = hi;
  return result;
}

}  // namespace omchaos
