#pragma once

#include <json.hpp>

#include "omchaos/classify.hpp"
#include "omchaos/embed.hpp"
#include "omchaos/integrate.hpp"
#include "omchaos/regime.hpp"
#include "omchaos/sensing.hpp"
#include "omchaos/welch.hpp"

namespace omchaos {

nlohmann::json to_json(const SystemParams& p);
nlohmann::json to_json(const SegmentReport& report);
nlohmann::json to_json(const DutyCycleFit& fit);
nlohmann::json to_json(const Regime& regime);
nlohmann::json to_json(const SensingReport& report);

// Sidecar carried next to every trajectory CSV: params, seed, provenance hash.
nlohmann::json trajectory_sidecar(const Trajectory& traj, const SystemParams& p);

// Spectrum CSV: header `freq_hz,psd,psd_db`.
std::string spectrum_csv(const Spectrum& spec);

// DensityGrid: row-major CSV plus a JSON bounds sidecar.
std::string density_csv(const DensityGrid& grid);
nlohmann::json density_bounds(const DensityGrid& grid);

}  // namespace omchaos
