#include "omchaos/lyapunov.hpp"

#include <cmath>

namespace omchaos {

namespace {

struct Tangent {
  double d[4];

  double norm() const {
    return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]);
  }
  void scale(double s) {
    for (double& di : d) di *= s;
  }
};

Tangent apply_jacobian(const std::array<double, 16>& jac, const Tangent& t) {
  Tangent out{};
  for (int r = 0; r < 4; ++r)
    out.d[r] = jac[r * 4 + 0] * t.d[0] + jac[r * 4 + 1] * t.d[1] + jac[r * 4 + 2] * t.d[2] +
               jac[r * 4 + 3] * t.d[3];
  return out;
}

// One RK4 step of the flow and the matching step of the variational equation.
void step_with_tangent(const SystemParams& p, State& s, Tangent& tan, double t, double dt) {
  auto add = [](const State& a, const StateDerivative& k, double w) {
    return State{a.a_re + w * k.a_re, a.a_im + w * k.a_im, a.x + w * k.x, a.v + w * k.v};
  };
  auto addt = [](const Tangent& a, const Tangent& k, double w) {
    return Tangent{{a.d[0] + w * k.d[0], a.d[1] + w * k.d[1], a.d[2] + w * k.d[2],
                    a.d[3] + w * k.d[3]}};
  };

  const StateDerivative k1 = derivatives(s, p, t);
  const Tangent m1 = apply_jacobian(jacobian(s, p), tan);
  const State s2 = add(s, k1, 0.5 * dt);
  const StateDerivative k2 = derivatives(s2, p, t + 0.5 * dt);
  const Tangent m2 = apply_jacobian(jacobian(s2, p), addt(tan, m1, 0.5 * dt));
  const State s3 = add(s, k2, 0.5 * dt);
  const StateDerivative k3 = derivatives(s3, p, t + 0.5 * dt);
  const Tangent m3 = apply_jacobian(jacobian(s3, p), addt(tan, m2, 0.5 * dt));
  const State s4 = add(s, k3, dt);
  const StateDerivative k4 = derivatives(s4, p, t + dt);
  const Tangent m4 = apply_jacobian(jacobian(s4, p), addt(tan, m3, dt));

  const double w = dt / 6.0;
  s = State{s.a_re + w * (k1.a_re + 2 * k2.a_re + 2 * k3.a_re + k4.a_re),
            s.a_im + w * (k1.a_im + 2 * k2.a_im + 2 * k3.a_im + k4.a_im),
            s.x + w * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
            s.v + w * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
  for (int i = 0; i < 4; ++i)
    tan.d[i] += w * (m1.d[i] + 2 * m2.d[i] + 2 * m3.d[i] + m4.d[i]);

  const double m = std::max(std::max(std::fabs(s.a_re), std::fabs(s.a_im)),
                            std::max(std::fabs(s.x), std::fabs(s.v)));
  if (!(m < 1.0e12) || !s.finite())
    throw DivergenceError("lyapunov_benettin: flow diverged at t = " + std::to_string(t) + " s",
                          t);
}

}  // namespace

LyapunovResult lyapunov_benettin(const SystemParams& p, const State& s0, double t_total,
                                 double renorm_interval) {
  p.validate();
  require(t_total > 0.0, "lyapunov_benettin: t_total must be > 0");
  require(renorm_interval > 0.0 && renorm_interval <= t_total / 8.0,
          "lyapunov_benettin: renorm_interval must be much shorter than t_total");

  const double dt = p.dt;
  const auto steps_per_renorm = std::max<long long>(1, std::llround(renorm_interval / dt));
  const auto n_renorms =
      std::max<long long>(1, std::llround(t_total / (static_cast<double>(steps_per_renorm) * dt)));
  const auto burn_steps = std::llround(p.t_transient / dt);

  State s = s0;
  double t = 0.0;
  Tangent tan{{0.5, 0.5, 0.5, 0.5}};

  for (long long i = 0; i < burn_steps; ++i) {
    step_with_tangent(p, s, tan, t, dt);
    t += dt;
    if ((i & 0xff) == 0) {
      const double n = tan.norm();
      if (n > 0.0) tan.scale(1.0 / n);  // keep the tangent bounded during burn-in
    }
  }
  {
    const double n = tan.norm();
    if (n > 0.0) tan.scale(1.0 / n);
  }

  LyapunovResult result;
  result.trace.reserve(n_renorms);
  double log_sum = 0.0;
  double t_acc = 0.0;
  for (long long r = 0; r < n_renorms; ++r) {
    for (long long i = 0; i < steps_per_renorm; ++i) {
      step_with_tangent(p, s, tan, t, dt);
      t += dt;
    }
    t_acc += static_cast<double>(steps_per_renorm) * dt;
    const double n = tan.norm();
    if (!(n > 0.0)) throw DivergenceError("lyapunov_benettin: tangent vanished", t);
    log_sum += std::log(n);
    tan.scale(1.0 / n);
    result.trace.emplace_back(t_acc, log_sum / t_acc);
  }
  result.exponent = log_sum / t_acc;
  return result;
}

MapLyapunovResult map_lyapunov(const std::function<double(double)>& map,
                               const std::function<double(double)>& derivative, double x0,
                               std::size_t n, std::size_t burn_in, double derivative_floor) {
  require(static_cast<bool>(map) && static_cast<bool>(derivative),
          "map_lyapunov: map and derivative must be callable");
  require(n >= 10000, "map_lyapunov: n must be >= 1e4");

  double x = x0;
  for (std::size_t i = 0; i < burn_in; ++i) x = map(x);

  MapLyapunovResult result;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::fabs(derivative(x));
    if (d < derivative_floor) {
      d = derivative_floor;
      ++result.clamped_terms;
    }
    acc += std::log(d);
    x = map(x);
  }
  result.exponent = acc / static_cast<double>(n);
  return result;
}

MapLyapunovResult logistic_lyapunov(double r, double x0, std::size_t n, std::size_t burn_in) {
  require(r > 0.0 && r <= 4.0, "logistic_lyapunov: r must be in (0, 4]");
  require(x0 > 0.0 && x0 < 1.0, "logistic_lyapunov: x0 must be in (0, 1)");
  return map_lyapunov([r](double x) { return r * x * (1.0 - x); },
                      [r](double x) { return r * (1.0 - 2.0 * x); }, x0, n, burn_in);
}

}  // namespace omchaos
