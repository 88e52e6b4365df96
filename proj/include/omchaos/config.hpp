#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omchaos/classify.hpp"
#include "omchaos/params.hpp"
#include "omchaos/sensing.hpp"

namespace omchaos {

// Flat `key = value` file with `#` comments. Keys are dotted paths
// (e.g. classifier.theta_k). Unknown keys are preserved.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
  std::string origin_ = "<none>";
};

// model.* keys -> SystemParams (missing keys keep the defaults).
SystemParams params_from_config(const Config& cfg);
// classifier.* keys.
ClassifierConfig classifier_from_config(const Config& cfg);
FeatureConfig features_from_config(const Config& cfg);
RegimeConfig regime_from_config(const Config& cfg);
// sense.* keys.
UltrasoundStimulus stimulus_from_config(const Config& cfg);
SensingRunConfig sensing_run_from_config(const Config& cfg);

}  // namespace omchaos
