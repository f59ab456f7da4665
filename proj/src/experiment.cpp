// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ofdmtrack/sensing.hpp"
#include "ofdmtrack/trackers.hpp"

namespace ofdmtrack {

namespace {

constexpr double kDegToRad = kPi / 180.0;

std::size_t idx(Estimator e) { return static_cast<std::size_t>(e); }

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::uint64_t flops_for(const ComplexityTable& t, Estimator e) {
  switch (e) {
    case Estimator::kRdm: return t.rdm;
    case Estimator::kKalman: return t.kalman;
    case Estimator::kEbm: return t.ebm;
    case Estimator::kZp: return t.zp;
    case Estimator::kCzt: return t.czt;
    case Estimator::kKalmanCzt: return t.kalman_czt;
  }
  throw std::invalid_argument("unknown estimator");
}

TrackState initial_state(const ExperimentConfig& cfg, const TargetTruth& truth,
                         const PeakEstimate& native, double aoa_meas) {
  TrackState s;
  if (cfg.init_mode == InitMode::kKnownTruth) {
    s.x = {truth.range_m, truth.radial_velocity_mps, truth.aoa_rad};
    s.cov = Mat3{};
  } else {
    s.x = {native.range_m, native.velocity_mps, aoa_meas};
    s.cov = Mat3::diagonal(cfg.ofdm.range_resolution(),
                           cfg.ofdm.velocity_resolution(), 0.5);
  }
  return s;
}

void run_one_trajectory(const ExperimentConfig& cfg,
                        const ScenarioParams& scen,
                        const std::array<bool, kEstimatorCount>& on,
                        std::size_t index,
                        std::array<TrackErrors, kEstimatorCount>& slot) {
  const OfdmConfig& ofdm = cfg.ofdm;
  const std::size_t steps = scen.steps;
  const double dt = ofdm.frame_interval();

  RandomStream rng(cfg.master_seed ^ static_cast<std::uint64_t>(index));
  const Trajectory traj = generate_trajectory(scen, dt, rng);

  for (std::size_t e = 0; e < kEstimatorCount; ++e) {
    if (!on[e]) continue;
    slot[e].range_err.assign(steps, 0.0);
    slot[e].velocity_err.assign(steps, 0.0);
    slot[e].aoa_err.assign(steps, 0.0);
    slot[e].position_err.assign(steps, 0.0);
  }

  KalmanConfig kcfg = default_kalman(ofdm);
  kcfg.sigma_meas = Mat3::diagonal(cfg.kalman_meas_var[0],
                                   cfg.kalman_meas_var[1],
                                   cfg.kalman_meas_var[2]);
  kcfg.sigma_pred = Mat3::diagonal(cfg.kalman_pred_var[0],
                                   cfg.kalman_pred_var[1],
                                   cfg.kalman_pred_var[2]);

  const bool rdm_feeds = on[idx(Estimator::kRdm)] ||
                         on[idx(Estimator::kKalman)] ||
                         on[idx(Estimator::kEbm)];
  const bool czt_needed =
      on[idx(Estimator::kCzt)] || on[idx(Estimator::kKalmanCzt)];
  const double grid_step_rad = cfg.aoa_grid_step_deg * kDegToRad;
  const double sector_rad = cfg.aoa_sector_deg * kDegToRad;
  const double max_range =
      static_cast<double>(ofdm.n_subcarriers) * ofdm.range_resolution();
  const double czt_span = max_range / static_cast<double>(cfg.pad_factor);
  const double ebm_tol = ofdm.range_resolution() * 1e-6;

  TrackState kal{}, kct{};
  EbmState ebm{};
  double czt_center = 0.0;

  for (std::size_t k = 0; k < steps; ++k) {
    const TargetTruth& truth = traj.truths[k];
    const ComplexMatrix frame = generate_frame(ofdm, rng);
    const RatioMatrix y = synthesize_ratio_matrix(ofdm, truth, frame, rng);
    const ArraySnapshots snaps = synthesize_array_snapshots(ofdm, truth, rng);
    const double aoa_meas = bartlett_aoa(snaps, grid_step_rad, sector_rad);

    // Trackers seeded from first-frame estimates need the plain map once
    // even when no plain-map consumer is enabled.
    const bool native_now =
        rdm_feeds ||
        (k == 0 && cfg.init_mode == InitMode::kRdmEstimate &&
         on[idx(Estimator::kKalmanCzt)]);

    ComplexMatrix row_stage, czt_stage;
    if (native_now || on[idx(Estimator::kZp)])
      row_stage = doppler_dft_stage(y);
    if (czt_needed) czt_stage = doppler_czt_stage(y, ofdm.n_symbols);

    PeakEstimate native{};
    if (native_now)
      native = zeropad_peak_from_doppler_dft(ofdm, row_stage, 1);

    auto record = [&](Estimator which, double r, double v, double a) {
      TrackErrors& t = slot[idx(which)];
      t.range_err[k] = r - truth.range_m;
      t.velocity_err[k] = v - truth.radial_velocity_mps;
      t.aoa_err[k] = a - truth.aoa_rad;
      t.position_err[k] =
          position_distance(r, a, truth.range_m, truth.aoa_rad);
    };

    if (on[idx(Estimator::kRdm)])
      record(Estimator::kRdm, native.range_m, native.velocity_mps, aoa_meas);

    if (on[idx(Estimator::kZp)]) {
      const PeakEstimate zp =
          zeropad_peak_from_doppler_dft(ofdm, row_stage, cfg.pad_factor);
      record(Estimator::kZp, zp.range_m, zp.velocity_mps, aoa_meas);
    }

    if (on[idx(Estimator::kCzt)]) {
      const ZoomWindow window =
          k == 0 ? ZoomWindow{max_range / 2.0, max_range}
                 : ZoomWindow{czt_center, czt_span};
      const PeakEstimate peak = detect_peak(
          zoom_from_doppler_czt(ofdm, czt_stage, window, ofdm.n_subcarriers));
      czt_center = peak.range_m;
      record(Estimator::kCzt, peak.range_m, peak.velocity_mps, aoa_meas);
    }

    if (on[idx(Estimator::kKalman)]) {
      if (k == 0) {
        kal = initial_state(cfg, truth, native, aoa_meas);
      } else {
        kal = kalman_update(kalman_predict(kal, kcfg),
                            {native.range_m, native.velocity_mps, aoa_meas},
                            kcfg.sigma_meas);
      }
      record(Estimator::kKalman, kal.x[0], kal.x[1], kal.x[2]);
    }

    if (on[idx(Estimator::kEbm)]) {
      if (k == 0) {
        ebm.range = cfg.init_mode == InitMode::kKnownTruth ? truth.range_m
                                                           : native.range_m;
        ebm.prev_measurement = native.range_m;
      } else {
        ebm_step(ebm, native.range_m, native.velocity_mps, dt, ebm_tol);
      }
      record(Estimator::kEbm, ebm.range, native.velocity_mps, aoa_meas);
    }

    if (on[idx(Estimator::kKalmanCzt)]) {
      if (k == 0) {
        kct = initial_state(cfg, truth, native, aoa_meas);
      } else {
        kct = zoom_tracked_step(ofdm, kcfg, kct, czt_stage, aoa_meas,
                                ofdm.n_subcarriers);
      }
      record(Estimator::kKalmanCzt, kct.x[0], kct.x[1], kct.x[2]);
    }
  }
}

}  // namespace

const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::kRdm: return "RDM";
    case Estimator::kKalman: return "Kalman";
    case Estimator::kEbm: return "EBM";
    case Estimator::kZp: return "ZP";
    case Estimator::kCzt: return "CZT";
    case Estimator::kKalmanCzt: return "KalmanCZT";
  }
  throw std::invalid_argument("unknown estimator");
}

std::optional<Estimator> estimator_from_name(std::string_view name) {
  for (Estimator e : kAllEstimators)
    if (name == estimator_name(e)) return e;
  return std::nullopt;
}

std::vector<Estimator> canonical_estimators(
    const std::vector<Estimator>& requested) {
  std::array<bool, kEstimatorCount> seen{};
  for (Estimator e : requested) seen[idx(e)] = true;
  std::vector<Estimator> out;
  for (Estimator e : kAllEstimators)
    if (seen[idx(e)]) out.push_back(e);
  return out;
}

const char* init_mode_name(InitMode mode) {
  return mode == InitMode::kKnownTruth ? "known_truth" : "rdm_estimate";
}

std::optional<InitMode> init_mode_from_name(std::string_view name) {
  if (name == "known_truth") return InitMode::kKnownTruth;
  if (name == "rdm_estimate") return InitMode::kRdmEstimate;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  ofdm.validate();
  scenario.validate();
  if (estimators.empty())
    throw std::invalid_argument("no estimators selected");
  if (n_trajectories == 0)
    throw std::invalid_argument("n_trajectories must be positive");
  if (!is_pow2(pad_factor))
    throw std::invalid_argument("pad_factor must be a power of two");
  if (n_threads == 0)
    throw std::invalid_argument("threads must be positive");
  if (!(aoa_grid_step_deg > 0.0))
    throw std::invalid_argument("aoa_grid_step_deg must be positive");
  if (!(aoa_sector_deg > 0.0) || aoa_sector_deg > 90.0)
    throw std::invalid_argument("aoa_sector_deg must be in (0, 90]");
  for (double v : kalman_meas_var)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("kalman_meas_var entries must be >= 0");
  for (double v : kalman_pred_var)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("kalman_pred_var entries must be >= 0");
  if (out_dir.empty())
    throw std::invalid_argument("out_dir must not be empty");
}

ResultsBundle run_experiment(const ExperimentConfig& user_cfg) {
  ExperimentConfig cfg = user_cfg;
  cfg.estimators = canonical_estimators(cfg.estimators);
  cfg.validate();

  // Targets past the delay-spread limit fall outside the signal model, so
  // the keep window is tightened to one cell short of it.
  ScenarioParams scen = cfg.scenario;
  const double model_max =
      cfg.ofdm.cp_range_limit() - cfg.ofdm.range_resolution();
  scen.keep_range_max = std::min(scen.keep_range_max, model_max);
  if (!(scen.keep_range_max > scen.keep_range_min))
    throw InfeasibleError(
        "keep window collapses under the delay-spread limit");

  const std::size_t n_traj = cfg.n_trajectories;
  std::array<bool, kEstimatorCount> on{};
  for (Estimator e : cfg.estimators) on[idx(e)] = true;

  std::vector<std::array<TrackErrors, kEstimatorCount>> slots(n_traj);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;

  auto work = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_traj) return;
      try {
        run_one_trajectory(cfg, scen, on, i, slots[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min(cfg.n_threads, n_traj));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ResultsBundle out;
  out.config = cfg;

  const QuantizationBounds qb = quantization_bounds(
      cfg.ofdm, cfg.ofdm.n_subcarriers, cfg.ofdm.n_symbols);
  out.bounds.range_bound_m2 = qb.range_var;
  out.bounds.velocity_bound_m2s2 = qb.velocity_var;
  out.bounds.crb_aoa_avg_rad2 =
      crb_aoa_avg(std::pow(10.0, cfg.ofdm.snr_phi_db / 10.0), 1.0,
                  cfg.ofdm.n_antennas, cfg.ofdm.n_aoa_snapshots);

  const ComplexityTable ct = complexity_table(cfg.ofdm, cfg.pad_factor);
  for (Estimator e : cfg.estimators) {
    std::vector<TrackErrors> tracks;
    tracks.reserve(n_traj);
    for (std::size_t i = 0; i < n_traj; ++i)
      tracks.push_back(std::move(slots[i][idx(e)]));

    EstimatorSummary s;
    s.which = e;
    s.metrics = summarize_metrics(tracks, scen.steps);
    s.flops_per_frame = flops_for(ct, e);
    out.summary.push_back(s);
    out.curves.push_back(aggregate_metrics(tracks, scen.steps));
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not a number: " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument("config value for '" + key +
                                "' has trailing characters: " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  if (value.empty() || value[0] == '-')
    throw std::invalid_argument("config value for '" + key +
                                "' must be a non-negative integer: " + value);
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(value, &pos, 10);
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not an integer: " + value);
  }
  if (pos != value.size())
    throw std::invalid_argument("config value for '" + key +
                                "' has trailing characters: " + value);
  return v;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "0" || value == "false") return false;
  if (value == "1" || value == "true") return true;
  throw std::invalid_argument("config value for '" + key +
                              "' must be 0/1/true/false: " + value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) parts.push_back(trim(item));
  return parts;
}

std::array<double, 3> parse_triplet(const std::string& key,
                                    const std::string& value) {
  const std::vector<std::string> parts = split_list(value);
  if (parts.size() != 3)
    throw std::invalid_argument("config value for '" + key +
                                "' needs three comma-separated numbers");
  return {parse_double(key, parts[0]), parse_double(key, parts[1]),
          parse_double(key, parts[2])};
}

std::string fmt_exact(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string join_estimators(const std::vector<Estimator>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ',';
    out += estimator_name(list[i]);
  }
  return out;
}

std::string join_triplet(const std::array<double, 3>& v) {
  return fmt_exact(v[0]) + "," + fmt_exact(v[1]) + "," + fmt_exact(v[2]);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.flush();
  if (!f.good()) throw IoError("write failed: " + path);
}

}  // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
  OfdmConfig& w = cfg.ofdm;
  ScenarioParams& s = cfg.scenario;

  if (key == "carrier_hz") w.carrier_hz = parse_double(key, value);
  else if (key == "bandwidth_hz") w.bandwidth_hz = parse_double(key, value);
  else if (key == "n_subcarriers") w.n_subcarriers = parse_size(key, value);
  else if (key == "n_symbols") w.n_symbols = parse_size(key, value);
  else if (key == "n_cp") w.n_cp = parse_size(key, value);
  else if (key == "n_antennas") w.n_antennas = parse_size(key, value);
  else if (key == "n_aoa_snapshots")
    w.n_aoa_snapshots = parse_size(key, value);
  else if (key == "snr_phi_db") w.snr_phi_db = parse_double(key, value);
  else if (key == "tx_split_penalty")
    w.tx_split_penalty = parse_bool(key, value);
  else if (key == "noise") w.noise_enabled = parse_bool(key, value);
  else if (key == "steps") s.steps = parse_size(key, value);
  else if (key == "init_range_min") s.init_range_min = parse_double(key, value);
  else if (key == "init_range_max") s.init_range_max = parse_double(key, value);
  else if (key == "init_aoa_max_deg")
    s.init_aoa_max_deg = parse_double(key, value);
  else if (key == "speed_min") s.speed_min = parse_double(key, value);
  else if (key == "speed_max") s.speed_max = parse_double(key, value);
  else if (key == "keep_range_min") s.keep_range_min = parse_double(key, value);
  else if (key == "keep_range_max") s.keep_range_max = parse_double(key, value);
  else if (key == "keep_aoa_max_deg")
    s.keep_aoa_max_deg = parse_double(key, value);
  else if (key == "max_attempts") s.max_attempts = parse_size(key, value);
  else if (key == "estimators") {
    const std::vector<std::string> names = split_list(value);
    std::vector<Estimator> list;
    for (const std::string& name : names) {
      const std::optional<Estimator> e = estimator_from_name(name);
      if (!e)
        throw std::invalid_argument("unknown estimator name: " + name);
      list.push_back(*e);
    }
    if (list.empty())
      throw std::invalid_argument("estimator list must not be empty");
    cfg.estimators = std::move(list);
  } else if (key == "n_trajectories") {
    cfg.n_trajectories = parse_size(key, value);
  } else if (key == "init_mode") {
    const std::optional<InitMode> m = init_mode_from_name(value);
    if (!m) throw std::invalid_argument("unknown init mode: " + value);
    cfg.init_mode = *m;
  } else if (key == "master_seed") {
    cfg.master_seed = parse_u64(key, value);
  } else if (key == "pad_factor") {
    cfg.pad_factor = parse_size(key, value);
  } else if (key == "threads") {
    cfg.n_threads = parse_size(key, value);
  } else if (key == "aoa_grid_step_deg") {
    cfg.aoa_grid_step_deg = parse_double(key, value);
  } else if (key == "aoa_sector_deg") {
    cfg.aoa_sector_deg = parse_double(key, value);
  } else if (key == "kalman_meas_var") {
    cfg.kalman_meas_var = parse_triplet(key, value);
  } else if (key == "kalman_pred_var") {
    cfg.kalman_pred_var = parse_triplet(key, value);
  } else if (key == "out_dir") {
    if (value.empty())
      throw std::invalid_argument("out_dir must not be empty");
    cfg.out_dir = value;
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("malformed config line " +
                                  std::to_string(line_no) + ": " + stripped);
    apply_config_entry(cfg, trim(stripped.substr(0, eq)),
                       trim(stripped.substr(eq + 1)));
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  apply_config_text(cfg, buf.str());
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  apply_config_text(cfg, text);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  return cfg;
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "# waveform\n";
  out << "carrier_hz=" << fmt_exact(cfg.ofdm.carrier_hz) << "\n";
  out << "bandwidth_hz=" << fmt_exact(cfg.ofdm.bandwidth_hz) << "\n";
  out << "n_subcarriers=" << cfg.ofdm.n_subcarriers << "\n";
  out << "n_symbols=" << cfg.ofdm.n_symbols << "\n";
  out << "n_cp=" << cfg.ofdm.n_cp << "\n";
  out << "n_antennas=" << cfg.ofdm.n_antennas << "\n";
  out << "n_aoa_snapshots=" << cfg.ofdm.n_aoa_snapshots << "\n";
  out << "snr_phi_db=" << fmt_exact(cfg.ofdm.snr_phi_db) << "\n";
  out << "tx_split_penalty=" << (cfg.ofdm.tx_split_penalty ? 1 : 0) << "\n";
  out << "noise=" << (cfg.ofdm.noise_enabled ? 1 : 0) << "\n";
  out << "# scenario\n";
  out << "steps=" << cfg.scenario.steps << "\n";
  out << "init_range_min=" << fmt_exact(cfg.scenario.init_range_min) << "\n";
  out << "init_range_max=" << fmt_exact(cfg.scenario.init_range_max) << "\n";
  out << "init_aoa_max_deg=" << fmt_exact(cfg.scenario.init_aoa_max_deg)
      << "\n";
  out << "speed_min=" << fmt_exact(cfg.scenario.speed_min) << "\n";
  out << "speed_max=" << fmt_exact(cfg.scenario.speed_max) << "\n";
  out << "keep_range_min=" << fmt_exact(cfg.scenario.keep_range_min) << "\n";
  out << "keep_range_max=" << fmt_exact(cfg.scenario.keep_range_max) << "\n";
  out << "keep_aoa_max_deg=" << fmt_exact(cfg.scenario.keep_aoa_max_deg)
      << "\n";
  out << "max_attempts=" << cfg.scenario.max_attempts << "\n";
  out << "# run\n";
  out << "estimators=" << join_estimators(cfg.estimators) << "\n";
  out << "n_trajectories=" << cfg.n_trajectories << "\n";
  out << "init_mode=" << init_mode_name(cfg.init_mode) << "\n";
  out << "master_seed=" << cfg.master_seed << "\n";
  out << "pad_factor=" << cfg.pad_factor << "\n";
  // The worker count shapes scheduling only, never values, so echoing it
  // would make otherwise identical result bundles differ byte-wise.
  out << "aoa_grid_step_deg=" << fmt_exact(cfg.aoa_grid_step_deg) << "\n";
  out << "aoa_sector_deg=" << fmt_exact(cfg.aoa_sector_deg) << "\n";
  out << "kalman_meas_var=" << join_triplet(cfg.kalman_meas_var) << "\n";
  out << "kalman_pred_var=" << join_triplet(cfg.kalman_pred_var) << "\n";
  out << "out_dir=" << cfg.out_dir << "\n";
  return out.str();
}

std::string render_summary(const ResultsBundle& results) {
  std::ostringstream out;
  out << "version=" << kVersionString << "\n";
  out << "master_seed=" << results.config.master_seed << "\n";
  out << "n_trajectories=" << results.config.n_trajectories << "\n";
  out << "steps=" << results.config.scenario.steps << "\n";
  out << "init_mode=" << init_mode_name(results.config.init_mode) << "\n";
  out << "pad_factor=" << results.config.pad_factor << "\n";
  out << "crb_aoa_avg_rad2=" << fmt6(results.bounds.crb_aoa_avg_rad2) << "\n";
  out << "range_bound_m2=" << fmt6(results.bounds.range_bound_m2) << "\n";
  out << "velocity_bound_m2s2=" << fmt6(results.bounds.velocity_bound_m2s2)
      << "\n";
  for (const EstimatorSummary& s : results.summary) {
    out << "\n";
    out << "estimator=" << estimator_name(s.which) << "\n";
    out << "range_rmse_m=" << fmt6(s.metrics.range_rmse) << "\n";
    out << "velocity_rmse_mps=" << fmt6(s.metrics.velocity_rmse) << "\n";
    out << "aoa_rmse_rad=" << fmt6(s.metrics.aoa_rmse) << "\n";
    out << "position_err_m=" << fmt6(s.metrics.position_err) << "\n";
    out << "flops_per_frame=" << s.flops_per_frame << "\n";
  }
  return out.str();
}

std::string render_curves_csv(const ResultsBundle& results) {
  std::ostringstream out;
  out << "step,estimator,range_rmse,velocity_rmse,aoa_rmse,position_err\n";
  const std::size_t steps = results.config.scenario.steps;
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t e = 0; e < results.summary.size(); ++e) {
      const StepMetrics& m = results.curves[e][s];
      out << (s + 1) << ',' << estimator_name(results.summary[e].which)
          << ',' << fmt6(m.range_rmse) << ',' << fmt6(m.velocity_rmse) << ','
          << fmt6(m.aoa_rmse) << ',' << fmt6(m.position_err) << "\n";
    }
  }
  return out.str();
}

void emit_results(const ResultsBundle& results, const std::string& out_dir) {
  if (results.summary.empty() || results.curves.empty())
    throw std::invalid_argument("results bundle has no estimator records");
  if (results.summary.size() != results.curves.size())
    throw std::invalid_argument("summary and curve lists disagree");
  for (const std::vector<StepMetrics>& curve : results.curves)
    if (curve.empty())
      throw std::invalid_argument("results bundle has an empty curve");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  write_file(out_dir + "/summary.txt", render_summary(results));
  write_file(out_dir + "/curves.csv", render_curves_csv(results));
  write_file(out_dir + "/config.txt", render_config(results.config));
}

}  // namespace ofdmtrack
