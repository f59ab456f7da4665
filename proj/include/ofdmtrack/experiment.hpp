// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmtrack/scenario.hpp"
#include "ofdmtrack/waveform.hpp"

namespace ofdmtrack {

/// The six estimation strategies, in the fixed reporting order.
enum class Estimator : std::size_t {
  kRdm = 0,
  kKalman,
  kEbm,
  kZp,
  kCzt,
  kKalmanCzt,
};

inline constexpr std::size_t kEstimatorCount = 6;
inline constexpr std::array<Estimator, kEstimatorCount> kAllEstimators = {
    Estimator::kRdm, Estimator::kKalman, Estimator::kEbm,
    Estimator::kZp,  Estimator::kCzt,    Estimator::kKalmanCzt,
};

const char* estimator_name(Estimator e);
std::optional<Estimator> estimator_from_name(std::string_view name);

/// Duplicate-free estimator set in reporting order.
std::vector<Estimator> canonical_estimators(
    const std::vector<Estimator>& requested);

/// How the tracking filters obtain their first state.
enum class InitMode {
  kKnownTruth,    // exact initial range/velocity/angle, zero covariance
  kRdmEstimate,   // first-frame map estimates, one-cell covariance
};

const char* init_mode_name(InitMode mode);
std::optional<InitMode> init_mode_from_name(std::string_view name);

/// Complete description of one batch run.
struct ExperimentConfig {
  OfdmConfig ofdm;
  ScenarioParams scenario;
  std::vector<Estimator> estimators{kAllEstimators.begin(),
                                    kAllEstimators.end()};
  std::size_t n_trajectories = 100;
  InitMode init_mode = InitMode::kKnownTruth;
  std::uint64_t master_seed = 1;
  std::size_t pad_factor = 16;   // range oversampling; also sets the zoom span
  std::size_t n_threads = 1;
  double aoa_grid_step_deg = 0.01;
  double aoa_sector_deg = 60.0;
  std::array<double, 3> kalman_meas_var = {4.4, 0.01, 0.01};
  std::array<double, 3> kalman_pred_var = {1.3e-5, 0.8, 0.4};
  std::string out_dir = "results";

  void validate() const;
};

struct EstimatorSummary {
  Estimator which = Estimator::kRdm;
  SummaryMetrics metrics;
  std::uint64_t flops_per_frame = 0;
};

/// Everything one run produces: the echoed configuration, theoretical
/// floors, whole-run summaries and per-step curves (summary[i] and curves[i]
/// describe the same estimator).
struct ResultsBundle {
  ExperimentConfig config;
  BoundsReport bounds;
  std::vector<EstimatorSummary> summary;
  std::vector<std::vector<StepMetrics>> curves;
};

/// Runs n_trajectories independent random tracks and aggregates their
/// errors.  Each trajectory owns the random stream master_seed xor its
/// index, so results are byte-identical for any thread count.  The keep
/// window is tightened to the delay-spread model limit before sampling.
ResultsBundle run_experiment(const ExperimentConfig& cfg);

/// Flat key=value configuration text.  '#' starts a comment; blank lines
/// are skipped; unknown keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Applies one key=value entry on top of an existing configuration.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

/// Applies every entry of a config text / file on top of an existing
/// configuration, keeping untouched fields as they are.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// Complete configuration as config-file text; parsing it reproduces the
/// configuration exactly.
std::string render_config(const ExperimentConfig& cfg);

/// Whole-run summaries as key=value records, one blank-line-separated block
/// per estimator after a run header.
std::string render_summary(const ResultsBundle& results);

/// Per-step curves as CSV with the fixed header
/// step,estimator,range_rmse,velocity_rmse,aoa_rmse,position_err.
std::string render_curves_csv(const ResultsBundle& results);

/// Writes summary.txt, curves.csv and config.txt into out_dir, creating it
/// if needed.  Throws IoError on filesystem failure and invalid_argument on
/// an empty bundle.
void emit_results(const ResultsBundle& results, const std::string& out_dir);

}  // namespace ofdmtrack
