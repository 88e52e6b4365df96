#include "omchaos/params.hpp"

#include <cmath>
#include <sstream>

#include "omchaos/io.hpp"

namespace omchaos {

namespace {

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw PreconditionError(std::string("SystemParams.") + name + " is not finite");
}

void check_positive(double x, const char* name) {
  check_finite(x, name);
  if (!(x > 0.0)) throw PreconditionError(std::string("SystemParams.") + name + " must be > 0");
}

}  // namespace

void SystemParams::validate() const {
  check_finite(delta, "delta");
  check_positive(kappa, "kappa");
  check_positive(omega_m, "omega_m");
  check_positive(gamma_m, "gamma_m");
  check_positive(dt, "dt");
  check_finite(kappa_ex, "kappa_ex");
  if (!(kappa_ex > 0.0 && kappa_ex <= kappa))
    throw PreconditionError("SystemParams.kappa_ex must satisfy 0 < kappa_ex <= kappa");
  check_finite(g0, "g0");
  check_finite(drive_amplitude, "drive_amplitude");
  check_finite(noise_sigma, "noise_sigma");
  if (noise_sigma < 0.0) throw PreconditionError("SystemParams.noise_sigma must be >= 0");
  check_finite(t_transient, "t_transient");
  if (t_transient < 0.0) throw PreconditionError("SystemParams.t_transient must be >= 0");
  check_positive(t_record, "t_record");
  if (decimation < 0) throw PreconditionError("SystemParams.decimation must be >= 0");
  // RK4 stability guard on the fastest linear rate.
  if (!(dt * std::max(kappa, omega_m) < 0.2))
    throw PreconditionError("SystemParams.dt too large: dt * max(kappa, omega_m) must be < 0.2");
}

int SystemParams::effective_decimation() const {
  if (decimation > 0) return decimation;
  const double f_m = omega_m / (2.0 * M_PI);
  const int stride = static_cast<int>(std::floor(1.0 / (dt * 20.0 * f_m)));
  return stride < 1 ? 1 : stride;
}

std::string SystemParams::canonical_string() const {
  std::ostringstream os;
  os << "delta=" << format_double(delta) << ";kappa=" << format_double(kappa)
     << ";kappa_ex=" << format_double(kappa_ex) << ";omega_m=" << format_double(omega_m)
     << ";gamma_m=" << format_double(gamma_m) << ";g0=" << format_double(g0)
     << ";drive_amplitude=" << format_double(drive_amplitude)
     << ";noise_sigma=" << format_double(noise_sigma) << ";dt=" << format_double(dt)
     << ";t_transient=" << format_double(t_transient) << ";t_record=" << format_double(t_record)
     << ";decimation=" << effective_decimation();
  return os.str();
}

std::string SystemParams::hash() const { return fnv1a_hex(canonical_string()); }

SystemParams default_params() { return SystemParams{}; }

}  // namespace omchaos
