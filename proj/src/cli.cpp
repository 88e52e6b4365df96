#include "omchaos/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "omchaos/config.hpp"
#include "omchaos/embed.hpp"
#include "omchaos/io.hpp"
#include "omchaos/lyapunov.hpp"
#include "omchaos/sensing.hpp"
#include "omchaos/serialize.hpp"
#include "omchaos/sweep.hpp"
#include "omchaos/synth.hpp"
#include "omchaos/version.hpp"

namespace omchaos {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitInsufficient = 4;

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int jobs = 1;

  Config config() const {
    return config_path.empty() ? Config{} : Config::load(config_path);
  }
  fs::path out(const std::string& name) const { return fs::path(out_dir) / name; }
};

void write_traj_outputs(const GlobalOpts& g, const Trajectory& traj, const SystemParams& p) {
  write_trajectory_csv(g.out("trajectory.csv"), traj.t0, traj.fs, traj.intensity, traj.x, traj.v);
  write_text_file(g.out("trajectory.json"), trajectory_sidecar(traj, p).dump(2) + "\n");
}

int cmd_simulate(const GlobalOpts& g) {
  const Config cfg = g.config();
  const SystemParams p = params_from_config(cfg);
  const Trajectory traj = integrate(p, State{}, g.seed);
  write_traj_outputs(g, traj, p);
  std::cout << "simulate: wrote " << traj.size() << " samples at fs = " << traj.fs << " Hz to "
            << g.out_dir << "\n";
  return kExitOk;
}

int cmd_synthesize(const GlobalOpts& g, double duty, double ts_s, double duration, double fs,
                   double f0) {
  const Config cfg = g.config();
  const double r = cfg.get_double("synth.logistic_r", 4.0);
  const double x0 = cfg.get_double("synth.logistic_x0", 0.37);
  const auto n = static_cast<std::size_t>(std::llround(duration * fs));

  SourcePair sources;
  sources.periodic = harmonic_series(f0, {1.0, 0.5, 0.25}, fs, duration);
  sources.chaotic = logistic_series(r, x0, n, fs);
  const GatingSpec spec{ts_s, duty};
  const SynthesisResult synth = synthesize_intermittent(sources, spec, duration, fs, g.seed);

  write_series_csv(g.out("synthesized.csv"), synth.series, &synth.labels);
  const json manifest{{"duty", duty},
                      {"ts_s", ts_s},
                      {"duration_s", duration},
                      {"fs", fs},
                      {"f0_hz", f0},
                      {"gate_phase_s", synth.gate_phase_s},
                      {"seed", g.seed},
                      {"toolkit_version", kVersion}};
  write_text_file(g.out("synthesized.json"), manifest.dump(2) + "\n");
  std::cout << "synthesize: wrote " << synth.series.size() << " samples, duty = " << duty << "\n";
  return kExitOk;
}

TimeSeries load_input_series(const std::string& input) {
  const std::string text = read_text_file(input);
  if (text.rfind("t,intensity,x,v", 0) == 0) {
    const TrajectoryCsv traj = read_trajectory_csv(input);
    return TimeSeries{traj.t0, traj.fs, traj.intensity};
  }
  return read_series_csv(input).series;
}

int cmd_segment(const GlobalOpts& g, const std::string& input, double window_s, bool fit_duty) {
  const Config cfg = g.config();
  const TimeSeries ts = load_input_series(input);
  const ClassifierConfig ccfg = classifier_from_config(cfg);
  const FeatureConfig fcfg = features_from_config(cfg);
  const double window = window_s > 0.0 ? window_s : auto_window_seconds(ts);

  const FeatureTrack track = window_features(ts, window, window / 2.0, fcfg);
  const auto labels = classify(track.windows, ccfg);
  const SegmentReport report =
      segments_from_labels(labels, track, ccfg.min_epoch_windows * window / 2.0, ccfg);

  json doc = to_json(report);
  DutyCycleFit fit;
  if (fit_duty) {
    fit = fit_duty_cycle(report, g.seed);
    doc["duty_fit"] = to_json(fit);
  }
  write_text_file(g.out("segments.json"), doc.dump(2) + "\n");

  // per-window label track
  {
    std::ostringstream os;
    os << "t_start,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      os << format_double(track.windows[i].t_start) << ',' << to_string(labels[i]) << '\n';
    write_text_file(g.out("labels.csv"), os.str());
  }
  std::cout << "segment: chaotic fraction = " << report.chaotic_fraction << " over "
            << report.segments.size() << " segment(s)\n";
  if (fit_duty && !fit.sufficient_epochs) {
    std::cout << "segment: insufficient chaotic epochs for a duty-cycle fit\n";
    return kExitInsufficient;
  }
  return kExitOk;
}

int cmd_spectrum(const GlobalOpts& g, const std::string& input, std::size_t nfft, double overlap) {
  const TimeSeries ts = load_input_series(input);
  const Spectrum spec = welch_psd(ts, nfft, overlap);
  write_text_file(g.out("spectrum.csv"), spectrum_csv(spec));
  std::cout << "spectrum: " << spec.freqs.size() << " bins, rbw = " << spec.rbw_hz << " Hz\n";
  return kExitOk;
}

int cmd_portrait(const GlobalOpts& g, const std::string& input, std::size_t tau, std::size_t dim,
                 std::size_t bins) {
  const std::string text = read_text_file(input);
  PointCloud cloud;
  if (text.rfind("t,intensity,x,v", 0) == 0) {
    const TrajectoryCsv traj = read_trajectory_csv(input);
    cloud = plane_cloud(traj.x, traj.v);  // simulated runs carry the true plane
  } else {
    const TimeSeries ts = read_series_csv(input).series;
    const std::size_t lag = tau > 0 ? tau : autocorr_zero_lag(ts);
    cloud = delay_embed(ts, lag, dim);
    if (dim > 2) {
      PointCloud plane;
      plane.dim = 2;
      plane.pts.reserve(2 * cloud.size());
      for (std::size_t k = 0; k < cloud.size(); ++k) {
        plane.pts.push_back(cloud.at(k, 0));
        plane.pts.push_back(cloud.at(k, 1));
      }
      cloud = std::move(plane);
    }
  }
  const DensityGrid grid = density_grid(cloud, bins);
  write_text_file(g.out("density.csv"), density_csv(grid));
  write_text_file(g.out("density.json"), density_bounds(grid).dump(2) + "\n");
  std::cout << "portrait: " << cloud.size() << " points over " << bins << "x" << bins
            << " cells\n";
  return kExitOk;
}

int cmd_classify(const GlobalOpts& g, const std::string& input) {
  const Config cfg = g.config();
  const TimeSeries ts = load_input_series(input);
  Regime regime = regime_classify(ts, regime_from_config(cfg));
  if (cfg.has("model.g0")) {
    // with model params at hand, attach the flow exponent as extra evidence
    const SystemParams p = params_from_config(cfg);
    const double t_total = cfg.get_double("sweep.lyapunov_t_total", 100.0e-6);
    const double renorm = cfg.get_double("sweep.lyapunov_renorm", 1.0e-6);
    if (t_total > 0.0)
      regime.evidence.lyapunov = lyapunov_benettin(p, State{}, t_total, renorm).exponent;
  }
  write_text_file(g.out("regime.json"), to_json(regime).dump(2) + "\n");
  std::cout << "classify: " << to_string(regime.label)
            << " (chaotic fraction = " << regime.evidence.chaotic_fraction << ")\n";
  return kExitOk;
}

int cmd_sense(const GlobalOpts& g, double f_u, double amplitude, double p_u, double rbw_override) {
  const Config cfg = g.config();
  UltrasoundStimulus stim = stimulus_from_config(cfg);
  if (f_u > 0.0) stim.f_u_hz = f_u;
  if (amplitude >= 0.0) stim.amplitude = amplitude;
  if (p_u > 0.0) stim.p_u_watts = p_u;
  const SensingRunConfig run = sensing_run_from_config(cfg);
  const RegimeConfig rcfg = regime_from_config(cfg);

  // Configs listed as sense.configs = path1,path2,... ; fall back to the
  // model.* block of the main config as a single entry plus its no-drive twin.
  std::vector<SystemParams> configs;
  std::vector<std::string> names;
  if (cfg.has("sense.configs")) {
    std::istringstream ss(cfg.get_string("sense.configs", ""));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      configs.push_back(params_from_config(Config::load(tok)));
      names.push_back(tok);
    }
  } else {
    throw PreconditionError("sense: config must list sense.configs = <cfg>,<cfg>,...");
  }

  auto reports = regime_comparison(configs, stim, g.seed, run, rcfg);
  if (rbw_override > 0.0)
    for (auto& r : reports)
      if (r.status == "ok") {
        r.rbw_hz = rbw_override;
        r.nep_w_per_sqrt_hz = nep(stim.p_u_watts, r.snr, rbw_override);
      }

  json out = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    json j = to_json(reports[i]);
    j["config"] = names[i];
    out.push_back(j);
  }
  write_text_file(g.out("sensing.json"), out.dump(2) + "\n");

  // ranking table, best SNR first
  std::vector<std::size_t> order(reports.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return reports[a].snr > reports[b].snr;
  });
  std::ostringstream os;
  os << "rank,config,regime,snr,snr_db,nep_w_per_sqrt_hz,peak_db,floor_db,status\n";
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& r = reports[order[rank]];
    os << rank + 1 << ',' << names[order[rank]] << ',' << r.regime << ',' << format_double(r.snr)
       << ',' << format_double(10.0 * std::log10(std::max(r.snr, 1e-300))) << ','
       << format_double(r.nep_w_per_sqrt_hz) << ',' << format_double(r.peak_db) << ','
       << format_double(r.floor_db) << ',' << r.status << '\n';
  }
  write_text_file(g.out("sensing_ranking.csv"), os.str());

  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& r = reports[order[rank]];
    std::cout << "sense: #" << rank + 1 << " " << r.regime << " snr = " << r.snr
              << " nep = " << r.nep_w_per_sqrt_hz << " (" << r.status << ")\n";
  }
  return kExitOk;
}

int cmd_sweep(const GlobalOpts& g) {
  const Config cfg = g.config();
  SweepPlan plan = plan_from_config(cfg);
  plan.out_dir = g.out_dir;
  plan.jobs = g.jobs;
  if (g.seed != 0) plan.master_seed = g.seed;
  const SystemParams base = params_from_config(cfg);
  const SweepResult result = run_sweep(plan, base);
  std::size_t ok = 0;
  for (const auto& r : result.rows) ok += r.status == "ok";
  std::cout << "sweep: " << ok << "/" << result.rows.size() << " points ok, results in "
            << g.out_dir << "/sweep.json\n";
  return kExitOk;
}

int cmd_report(const GlobalOpts& g, const std::string& sweep_dir) {
  render_report(sweep_dir, g.out_dir);
  std::cout << "report: wrote " << g.out_dir << "/report.md\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"optomechanical intermittent-chaos simulator and analysis toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "key = value config file");
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--jobs", g.jobs, "parallel width for sweeps");

  auto* simulate = app.add_subcommand("simulate", "integrate the model and write a trajectory");

  double duty = 0.5, ts_s = 1.0, duration = 10.0, fs = 20000.0, f0 = 1000.0;
  auto* synthesize = app.add_subcommand("synthesize", "gated periodic/chaotic mixture");
  synthesize->add_option("--duty", duty, "chaotic duty cycle in [0,1]");
  synthesize->add_option("--ts", ts_s, "gate cycle period (s)");
  synthesize->add_option("--duration", duration, "series duration (s)");
  synthesize->add_option("--fs", fs, "sample rate (Hz)");
  synthesize->add_option("--f0", f0, "periodic source fundamental (Hz)");

  std::string input;
  double window_s = 0.0;
  bool fit_duty = false;
  auto* segment = app.add_subcommand("segment", "label periodic/chaotic epochs");
  segment->add_option("input", input, "trajectory or series CSV")->required();
  segment->add_option("--window", window_s, "analysis window (s); 0 = auto");
  segment->add_flag("--fit-duty", fit_duty, "estimate gating duty cycle and period");

  std::size_t nfft = 4096;
  double overlap = 0.5;
  auto* spectrum = app.add_subcommand("spectrum", "Welch power spectral density");
  spectrum->add_option("input", input, "trajectory or series CSV")->required();
  spectrum->add_option("--nfft", nfft, "FFT length (power of two)");
  spectrum->add_option("--overlap", overlap, "segment overlap fraction");

  std::size_t tau = 0, dim = 2, bins = 64;
  auto* portrait = app.add_subcommand("portrait", "phase portrait density grid");
  portrait->add_option("input", input, "trajectory or series CSV")->required();
  portrait->add_option("--tau", tau, "embedding delay in samples; 0 = auto");
  portrait->add_option("--dim", dim, "embedding dimension for scalar input");
  portrait->add_option("--bins", bins, "grid resolution");

  auto* classify = app.add_subcommand("classify", "three-way regime call");
  classify->add_option("input", input, "trajectory or series CSV")->required();

  double f_u = 0.0, amplitude = -1.0, p_u = 0.0, rbw = 0.0;
  auto* sense = app.add_subcommand("sense", "ultrasonic response comparison across regimes");
  sense->add_option("--f-u", f_u, "stimulus frequency (Hz)");
  sense->add_option("--amplitude", amplitude, "stimulus amplitude (force units)");
  sense->add_option("--p-u", p_u, "nominal stimulus power (W)");
  sense->add_option("--rbw", rbw, "override resolution bandwidth B (Hz)");

  auto* sweep = app.add_subcommand("sweep", "parameter sweep over a config-defined plan");

  std::string sweep_dir;
  auto* report = app.add_subcommand("report", "render a sweep result bundle");
  report->add_option("sweep_dir", sweep_dir, "directory containing sweep.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(g);
    if (synthesize->parsed()) return cmd_synthesize(g, duty, ts_s, duration, fs, f0);
    if (segment->parsed()) return cmd_segment(g, input, window_s, fit_duty);
    if (spectrum->parsed()) return cmd_spectrum(g, input, nfft, overlap);
    if (portrait->parsed()) return cmd_portrait(g, input, tau, dim, bins);
    if (classify->parsed()) return cmd_classify(g, input);
    if (sense->parsed()) return cmd_sense(g, f_u, amplitude, p_u, rbw);
    if (sweep->parsed()) return cmd_sweep(g);
    if (report->parsed()) return cmd_report(g, sweep_dir);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficient;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace omchaos
