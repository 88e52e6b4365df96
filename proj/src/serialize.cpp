#include "omchaos/serialize.hpp"

#include <sstream>

#include "omchaos/io.hpp"
#include "omchaos/version.hpp"

namespace omchaos {

using nlohmann::json;

json to_json(const SystemParams& p) {
  return json{{"delta", p.delta},
              {"kappa", p.kappa},
              {"kappa_ex", p.kappa_ex},
              {"omega_m", p.omega_m},
              {"gamma_m", p.gamma_m},
              {"g0", p.g0},
              {"drive_amplitude", p.drive_amplitude},
              {"noise_sigma", p.noise_sigma},
              {"dt", p.dt},
              {"t_transient", p.t_transient},
              {"t_record", p.t_record},
              {"decimation", p.effective_decimation()}};
}

json to_json(const SegmentReport& report) {
  json segs = json::array();
  for (const Segment& s : report.segments)
    segs.push_back(json{{"start_s", s.start_s}, {"end_s", s.end_s}, {"label", to_string(s.label)}});
  return json{{"segments", segs},
              {"chaotic_fraction", report.chaotic_fraction},
              {"window_s", report.window_s},
              {"hop_s", report.hop_s},
              {"t0", report.t0},
              {"t_end", report.t_end},
              {"thresholds",
               json{{"theta_flatness", report.thresholds.theta_flatness},
                    {"theta_k", report.thresholds.theta_k},
                    {"theta_return", report.thresholds.theta_return},
                    {"hysteresis_m", report.thresholds.hysteresis_m},
                    {"min_epoch_windows", report.thresholds.min_epoch_windows}}}};
}

json to_json(const DutyCycleFit& fit) {
  json j{{"sufficient_epochs", fit.sufficient_epochs},
         {"duty", fit.duty},
         {"duty_halfwidth", fit.duty_halfwidth},
         {"ts_defined", fit.ts_defined}};
  if (fit.ts_defined) {
    j["ts_s"] = fit.ts_s;
    j["ts_halfwidth_s"] = fit.ts_halfwidth_s;
  }
  return j;
}

json to_json(const Regime& regime) {
  json evidence{{"chaotic_fraction", regime.evidence.chaotic_fraction},
                {"floor_elevation_db", regime.evidence.floor_elevation_db}};
  if (regime.evidence.lyapunov) evidence["lyapunov_per_s"] = *regime.evidence.lyapunov;
  return json{{"label", to_string(regime.label)}, {"evidence", evidence}};
}

json to_json(const SensingReport& report) {
  return json{{"regime", report.regime},
              {"peak_db", report.peak_db},
              {"floor_db", report.floor_db},
              {"snr", report.snr},
              {"nep_w_per_sqrt_hz", report.nep_w_per_sqrt_hz},
              {"rbw_hz", report.rbw_hz},
              {"status", report.status}};
}

json trajectory_sidecar(const Trajectory& traj, const SystemParams& p) {
  return json{{"params", to_json(p)},
              {"params_hash", traj.params_hash},
              {"seed", traj.seed},
              {"t0", traj.t0},
              {"fs", traj.fs},
              {"samples", traj.size()},
              {"toolkit_version", kVersion}};
}

std::string spectrum_csv(const Spectrum& spec) {
  std::ostringstream os;
  os << "freq_hz,psd,psd_db\n";
  const auto db = spec.psd_db();
  for (std::size_t i = 0; i < spec.freqs.size(); ++i)
    os << format_double(spec.freqs[i]) << ',' << format_double(spec.psd[i]) << ','
       << format_double(db[i]) << '\n';
  return os.str();
}

std::string density_csv(const DensityGrid& grid) {
  std::ostringstream os;
  for (std::size_t i = 0; i < grid.bins; ++i) {
    for (std::size_t j = 0; j < grid.bins; ++j) {
      if (j) os << ',';
      os << format_double(grid.at(i, j));
    }
    os << '\n';
  }
  return os.str();
}

json density_bounds(const DensityGrid& grid) {
  return json{{"bins", grid.bins}, {"x_lo", grid.x_lo}, {"x_hi", grid.x_hi},
              {"y_lo", grid.y_lo}, {"y_hi", grid.y_hi}};
}

}  // namespace omchaos
