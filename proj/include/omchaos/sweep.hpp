#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "omchaos/config.hpp"
#include "omchaos/params.hpp"
#include "omchaos/regime.hpp"

namespace omchaos {

// Spearman rank correlation with tie-averaged ranks.
double spearman_rank_correlation(std::span<const double> x, std::span<const double> y);

struct SweepPlan {
  std::string field = "delta";   // swept SystemParams field
  std::vector<double> values;    // finite, non-empty
  std::uint64_t master_seed = 42;
  std::filesystem::path out_dir;
  int jobs = 1;
  std::size_t nfft = 4096;
  double lyapunov_t_total = 100.0e-6;  // 0 disables the per-point exponent
  double lyapunov_renorm = 1.0e-6;
  RegimeConfig regime;

  void validate() const;
  std::string hash() const;  // over field, values, master seed and analysis settings
};

// Per-point seeds come from point_seed(master_seed, plan index).
struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // "failed: <reason>" on per-point errors
  double chaotic_fraction = 0.0;
  std::string regime = "unknown";
  double lyapunov_per_s = 0.0;
  double floor_elevation_db = 0.0;
  std::string dir;  // artifact directory, relative to out_dir
};

struct SweepResult {
  std::string plan_hash;
  std::string field;
  std::uint64_t master_seed = 0;
  std::string toolkit_version;
  std::vector<SweepRow> rows;  // ordered by swept value
};

// Applies `field = value` on a copy of the base parameters. Swept fields:
// delta, drive_amplitude, g0, noise_sigma, kappa, kappa_ex.
SystemParams with_field(const SystemParams& base, const std::string& field, double value);

// integrate -> segment -> classify (plus floor and optional Lyapunov) per
// point; points run concurrently up to plan.jobs. Output files depend only on
// (plan, base), never on scheduling: reruns are byte-identical at any jobs
// setting. A diverging point produces a failed row, not a failed sweep.
SweepResult run_sweep(const SweepPlan& plan, const SystemParams& base);

void write_sweep_json(const SweepResult& result, const std::filesystem::path& out_dir);
SweepResult read_sweep_json(const std::filesystem::path& out_dir);

// Markdown summary plus plot-ready CSVs (fraction vs swept value, one
// spectrum and density grid per observed regime). Missing point artifacts are
// noted inline and never fatal.
void render_report(const std::filesystem::path& sweep_dir,
                   const std::filesystem::path& report_dir);

SweepPlan plan_from_config(const Config& cfg);

}  // namespace omchaos
