#include "omchaos/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "omchaos/embed.hpp"
#include "omchaos/io.hpp"
#include "omchaos/lyapunov.hpp"
#include "omchaos/rng.hpp"
#include "omchaos/serialize.hpp"
#include "omchaos/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace omchaos {

using nlohmann::json;

double spearman_rank_correlation(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 3,
          "spearman_rank_correlation: need >= 3 paired samples");
  auto ranks = [](std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // tie-averaged rank
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (rx[i] - mean) * (ry[i] - mean);
    vx += (rx[i] - mean) * (rx[i] - mean);
    vy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (vx <= 0.0 || vy <= 0.0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

void SweepPlan::validate() const {
  require(!values.empty(), "SweepPlan.values must be non-empty");
  for (double v : values)
    require(std::isfinite(v), "SweepPlan.values must all be finite");
  require(jobs >= 1, "SweepPlan.jobs must be >= 1");
  require(!out_dir.empty(), "SweepPlan.out_dir must be set");
  with_field(SystemParams{}, field, values.front());  // rejects unknown field names
}

std::string SweepPlan::hash() const {
  std::ostringstream os;
  os << "field=" << field << ";seed=" << master_seed << ";nfft=" << nfft
     << ";lyap=" << format_double(lyapunov_t_total) << ";renorm=" << format_double(lyapunov_renorm)
     << ";values=";
  for (double v : values) os << format_double(v) << ',';
  return fnv1a_hex(os.str());
}

SystemParams with_field(const SystemParams& base, const std::string& field, double value) {
  SystemParams p = base;
  if (field == "delta") p.delta = value;
  else if (field == "drive_amplitude") p.drive_amplitude = value;
  else if (field == "g0") p.g0 = value;
  else if (field == "noise_sigma") p.noise_sigma = value;
  else if (field == "kappa") p.kappa = value;
  else if (field == "kappa_ex") p.kappa_ex = value;
  else throw PreconditionError("unknown sweep field: " + field);
  return p;
}

namespace {

std::string point_dir_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "point_%03zu", index);
  return buf;
}

SweepRow run_point(const SweepPlan& plan, const SystemParams& base, std::size_t index,
                   const std::string& plan_hash) {
  SweepRow row;
  row.value = plan.values[index];
  row.seed = point_seed(plan.master_seed, index);
  row.dir = point_dir_name(index);
  const std::filesystem::path dir = plan.out_dir / row.dir;

  try {
    const SystemParams p = with_field(base, plan.field, row.value);
    const Trajectory traj = integrate(p, State{}, row.seed);
    const Regime regime = regime_classify(traj, plan.regime);
    row.chaotic_fraction = regime.evidence.chaotic_fraction;
    row.regime = to_string(regime.label);
    row.floor_elevation_db = regime.evidence.floor_elevation_db;

    Regime enriched = regime;
    if (plan.lyapunov_t_total > 0.0) {
      const auto lyap = lyapunov_benettin(p, State{}, plan.lyapunov_t_total, plan.lyapunov_renorm);
      row.lyapunov_per_s = lyap.exponent;
      enriched.evidence.lyapunov = lyap.exponent;
    } else {
      row.lyapunov_per_s = std::numeric_limits<double>::quiet_NaN();
    }

    std::filesystem::create_directories(dir);
    write_trajectory_csv(dir / "trajectory.csv", traj.t0, traj.fs, traj.intensity, traj.x, traj.v);
    json sidecar = trajectory_sidecar(traj, p);
    sidecar["plan_hash"] = plan_hash;
    write_text_file(dir / "trajectory.json", sidecar.dump(2) + "\n");

    json seg = to_json(enriched.segmentation);
    seg["plan_hash"] = plan_hash;
    seg["seed"] = row.seed;
    write_text_file(dir / "segments.json", seg.dump(2) + "\n");

    json reg = to_json(enriched);
    reg["plan_hash"] = plan_hash;
    reg["seed"] = row.seed;
    write_text_file(dir / "regime.json", reg.dump(2) + "\n");

    std::size_t nfft = plan.nfft;
    while (nfft > traj.size() && nfft > 4) nfft /= 2;
    const Spectrum spec = welch_psd_serial(traj.intensity_series(), nfft, 0.5);
    write_text_file(dir / "spectrum.csv", spectrum_csv(spec));

    const DensityGrid grid = density_grid_serial(plane_cloud(traj.x, traj.v), 64);
    write_text_file(dir / "density.csv", density_csv(grid));
    json bounds = density_bounds(grid);
    bounds["plan_hash"] = plan_hash;
    bounds["seed"] = row.seed;
    write_text_file(dir / "density.json", bounds.dump(2) + "\n");
  } catch (const std::exception& e) {
    row.status = std::string("failed: ") + e.what();
    row.regime = "unknown";
    row.chaotic_fraction = std::numeric_limits<double>::quiet_NaN();
    row.lyapunov_per_s = std::numeric_limits<double>::quiet_NaN();
    row.floor_elevation_db = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan, const SystemParams& base) {
  plan.validate();
  base.validate();
  std::filesystem::create_directories(plan.out_dir);

  SweepResult result;
  result.plan_hash = plan.hash();
  result.field = plan.field;
  result.master_seed = plan.master_seed;
  result.toolkit_version = kVersion;
  result.rows.resize(plan.values.size());

  const auto n = static_cast<long long>(plan.values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(plan.jobs)
#endif
  for (long long i = 0; i < n; ++i)
    result.rows[i] = run_point(plan, base, static_cast<std::size_t>(i), result.plan_hash);

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
  write_sweep_json(result, plan.out_dir);
  return result;
}

void write_sweep_json(const SweepResult& result, const std::filesystem::path& out_dir) {
  json rows = json::array();
  for (const SweepRow& r : result.rows) {
    json row{{"value", r.value},       {"seed", r.seed},
             {"status", r.status},     {"regime", r.regime},
             {"dir", r.dir}};
    auto put = [&row](const char* key, double v) {
      if (std::isnan(v)) row[key] = nullptr;
      else row[key] = v;
    };
    put("chaotic_fraction", r.chaotic_fraction);
    put("lyapunov_per_s", r.lyapunov_per_s);
    put("floor_elevation_db", r.floor_elevation_db);
    rows.push_back(row);
  }
  const json doc{{"plan_hash", result.plan_hash},
                 {"field", result.field},
                 {"master_seed", result.master_seed},
                 {"toolkit_version", result.toolkit_version},
                 {"rows", rows}};
  write_text_file(out_dir / "sweep.json", doc.dump(2) + "\n");
}

SweepResult read_sweep_json(const std::filesystem::path& out_dir) {
  const json doc = json::parse(read_text_file(out_dir / "sweep.json"));
  SweepResult result;
  result.plan_hash = doc.at("plan_hash").get<std::string>();
  result.field = doc.at("field").get<std::string>();
  result.master_seed = doc.at("master_seed").get<std::uint64_t>();
  result.toolkit_version = doc.at("toolkit_version").get<std::string>();
  for (const json& row : doc.at("rows")) {
    SweepRow r;
    r.value = row.at("value").get<double>();
    r.seed = row.at("seed").get<std::uint64_t>();
    r.status = row.at("status").get<std::string>();
    r.regime = row.at("regime").get<std::string>();
    r.dir = row.at("dir").get<std::string>();
    auto grab = [&row](const char* key) {
      return row.at(key).is_null() ? std::numeric_limits<double>::quiet_NaN()
                                   : row.at(key).get<double>();
    };
    r.chaotic_fraction = grab("chaotic_fraction");
    r.lyapunov_per_s = grab("lyapunov_per_s");
    r.floor_elevation_db = grab("floor_elevation_db");
    result.rows.push_back(r);
  }
  return result;
}

void render_report(const std::filesystem::path& sweep_dir,
                   const std::filesystem::path& report_dir) {
  const SweepResult result = read_sweep_json(sweep_dir);
  std::filesystem::create_directories(report_dir);

  // fraction vs swept value
  {
    std::ostringstream os;
    os << result.field << ",chaotic_fraction,regime,lyapunov_per_s,floor_elevation_db,status\n";
    for (const SweepRow& r : result.rows) {
      os << format_double(r.value) << ',';
      os << (std::isnan(r.chaotic_fraction) ? "" : format_double(r.chaotic_fraction)) << ',';
      os << r.regime << ',';
      os << (std::isnan(r.lyapunov_per_s) ? "" : format_double(r.lyapunov_per_s)) << ',';
      os << (std::isnan(r.floor_elevation_db) ? "" : format_double(r.floor_elevation_db)) << ',';
      os << r.status << '\n';
    }
    write_text_file(report_dir / ("fraction_vs_" + result.field + ".csv"), os.str());
  }

  // one representative spectrum / density per observed regime
  std::vector<std::string> notes;
  std::vector<std::string> seen;
  for (const SweepRow& r : result.rows) {
    if (r.status != "ok") continue;
    if (std::find(seen.begin(), seen.end(), r.regime) != seen.end()) continue;
    seen.push_back(r.regime);
    for (const char* name : {"spectrum.csv", "density.csv"}) {
      const auto src = sweep_dir / r.dir / name;
      if (!std::filesystem::exists(src)) {
        notes.push_back("missing artifact: " + src.string());
        continue;
      }
      const std::string stem = std::string(name).substr(0, std::string(name).find('.'));
      std::filesystem::copy_file(src, report_dir / (stem + "_" + r.regime + ".csv"),
                                 std::filesystem::copy_options::overwrite_existing);
    }
  }

  std::ostringstream md;
  md << "# Sweep report\n\n";
  md << "- plan hash: `" << result.plan_hash << "`\n";
  md << "- swept field: `" << result.field << "`\n";
  md << "- master seed: " << result.master_seed << "\n";
  md << "- toolkit version: " << result.toolkit_version << "\n\n";

  std::vector<double> xs, fr;
  std::size_t failed = 0;
  for (const SweepRow& r : result.rows) {
    if (r.status == "ok" && !std::isnan(r.chaotic_fraction)) {
      xs.push_back(r.value);
      fr.push_back(r.chaotic_fraction);
    } else {
      ++failed;
    }
  }
  if (xs.size() >= 3)
    md << "Spearman rank correlation of chaotic fraction vs " << result.field << ": "
       << format_double(spearman_rank_correlation(xs, fr)) << "\n\n";
  if (failed > 0) md << failed << " point(s) failed; see status column.\n\n";

  md << "| " << result.field
     << " | chaotic fraction | regime | lyapunov (1/s) | floor elevation (dB) | status |\n";
  md << "|---|---|---|---|---|---|\n";
  for (const SweepRow& r : result.rows) {
    md << "| " << format_double(r.value) << " | "
       << (std::isnan(r.chaotic_fraction) ? "-" : format_double(r.chaotic_fraction)) << " | "
       << r.regime << " | "
       << (std::isnan(r.lyapunov_per_s) ? "-" : format_double(r.lyapunov_per_s)) << " | "
       << (std::isnan(r.floor_elevation_db) ? "-" : format_double(r.floor_elevation_db)) << " | "
       << r.status << " |\n";
  }
  if (!notes.empty()) {
    md << "\n";
    for (const std::string& n : notes) md << "- " << n << "\n";
  }
  write_text_file(report_dir / "report.md", md.str());
}

SweepPlan plan_from_config(const Config& cfg) {
  SweepPlan plan;
  plan.field = cfg.get_string("sweep.field", plan.field);
  plan.master_seed = cfg.get_u64("sweep.master_seed", plan.master_seed);
  plan.nfft = static_cast<std::size_t>(cfg.get_int("sweep.nfft", plan.nfft));
  plan.lyapunov_t_total = cfg.get_double("sweep.lyapunov_t_total", plan.lyapunov_t_total);
  plan.lyapunov_renorm = cfg.get_double("sweep.lyapunov_renorm", plan.lyapunov_renorm);
  plan.regime = regime_from_config(cfg);

  if (cfg.has("sweep.values")) {
    std::istringstream vs(cfg.get_string("sweep.values", ""));
    std::string tok;
    while (std::getline(vs, tok, ',')) {
      if (tok.empty()) continue;
      plan.values.push_back(std::stod(tok));
    }
  } else {
    const double start = cfg.get_double("sweep.start", 0.0);
    const double stop = cfg.get_double("sweep.stop", 0.0);
    const auto n = cfg.get_int("sweep.n", 0);
    require(n >= 1, "sweep config needs sweep.values or sweep.start/stop/n");
    for (std::int64_t i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      plan.values.push_back(start + f * (stop - start));
    }
  }
  return plan;
}

}  // namespace omchaos
