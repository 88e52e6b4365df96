#include "omchaos/config.hpp"

#include <charconv>

#include "omchaos/io.hpp"

namespace omchaos {

namespace {

std::string trim(std::string_view sv) {
  const char* ws = " \t\r";
  const auto first = sv.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = sv.find_last_not_of(ws);
  return std::string(sv.substr(first, last - first + 1));
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw PreconditionError(origin + ":" + std::to_string(line_no) +
                              ": expected `key = value`, got '" + stripped + "'");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty())
      throw PreconditionError(origin + ":" + std::to_string(line_no) + ": empty key");
    cfg.kv_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.string());
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return std::nullopt;
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size())
    throw PreconditionError(origin_ + ": key '" + key + "' is not a number: '" + *v + "'");
  return out;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size())
    throw PreconditionError(origin_ + ": key '" + key + "' is not an integer: '" + *v + "'");
  return out;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size())
    throw PreconditionError(origin_ + ": key '" + key + "' is not an unsigned integer: '" + *v +
                            "'");
  return out;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

SystemParams params_from_config(const Config& cfg) {
  SystemParams p = default_params();
  p.delta = cfg.get_double("model.delta", p.delta);
  p.kappa = cfg.get_double("model.kappa", p.kappa);
  p.kappa_ex = cfg.get_double("model.kappa_ex", p.kappa_ex);
  p.omega_m = cfg.get_double("model.omega_m", p.omega_m);
  p.gamma_m = cfg.get_double("model.gamma_m", p.gamma_m);
  p.g0 = cfg.get_double("model.g0", p.g0);
  p.drive_amplitude = cfg.get_double("model.drive_amplitude", p.drive_amplitude);
  p.noise_sigma = cfg.get_double("model.noise_sigma", p.noise_sigma);
  p.dt = cfg.get_double("model.dt", p.dt);
  p.t_transient = cfg.get_double("model.t_transient", p.t_transient);
  p.t_record = cfg.get_double("model.t_record", p.t_record);
  p.decimation = static_cast<int>(cfg.get_int("model.decimation", p.decimation));
  p.validate();
  return p;
}

ClassifierConfig classifier_from_config(const Config& cfg) {
  ClassifierConfig c;
  c.theta_flatness = cfg.get_double("classifier.theta_flatness", c.theta_flatness);
  c.theta_k = cfg.get_double("classifier.theta_k", c.theta_k);
  c.theta_return = cfg.get_double("classifier.theta_return", c.theta_return);
  c.weights[0] = cfg.get_double("classifier.weight_flatness", c.weights[0]);
  c.weights[1] = cfg.get_double("classifier.weight_k", c.weights[1]);
  c.weights[2] = cfg.get_double("classifier.weight_return", c.weights[2]);
  c.hysteresis_m = static_cast<int>(cfg.get_int("classifier.hysteresis_m", c.hysteresis_m));
  c.min_epoch_windows = cfg.get_double("classifier.min_epoch_windows", c.min_epoch_windows);
  c.validate();
  return c;
}

FeatureConfig features_from_config(const Config& cfg) {
  FeatureConfig f;
  f.flatness_sublen =
      static_cast<std::size_t>(cfg.get_int("features.flatness_sublen", f.flatness_sublen));
  f.n_phases = static_cast<std::size_t>(cfg.get_int("features.n_phases", f.n_phases));
  f.phase_seed = cfg.get_u64("features.phase_seed", f.phase_seed);
  return f;
}

RegimeConfig regime_from_config(const Config& cfg) {
  RegimeConfig r;
  r.window_s = cfg.get_double("regime.window_s", r.window_s);
  r.periodic_max_fraction = cfg.get_double("regime.periodic_max_fraction", r.periodic_max_fraction);
  r.chaotic_min_fraction = cfg.get_double("regime.chaotic_min_fraction", r.chaotic_min_fraction);
  r.classifier = classifier_from_config(cfg);
  r.features = features_from_config(cfg);
  return r;
}

UltrasoundStimulus stimulus_from_config(const Config& cfg) {
  UltrasoundStimulus s;
  s.f_u_hz = cfg.get_double("sense.f_u_hz", s.f_u_hz);
  s.amplitude = cfg.get_double("sense.amplitude", s.amplitude);
  s.p_u_watts = cfg.get_double("sense.p_u_watts", s.p_u_watts);
  const std::string coupling = cfg.get_string("sense.coupling", "force");
  if (coupling == "force")
    s.coupling = StimulusCoupling::Force;
  else if (coupling == "drive-modulation")
    s.coupling = StimulusCoupling::DriveModulation;
  else
    throw PreconditionError("sense.coupling must be 'force' or 'drive-modulation'");
  return s;
}

SensingRunConfig sensing_run_from_config(const Config& cfg) {
  SensingRunConfig r;
  r.nfft = static_cast<std::size_t>(cfg.get_int("sense.nfft", r.nfft));
  r.overlap = cfg.get_double("sense.overlap", r.overlap);
  r.signal_halfwidth_hz = cfg.get_double("sense.signal_halfwidth_hz", r.signal_halfwidth_hz);
  r.noise_band_halfwidth_hz =
      cfg.get_double("sense.noise_band_halfwidth_hz", r.noise_band_halfwidth_hz);
  return r;
}

}  // namespace omchaos
