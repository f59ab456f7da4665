// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ofdmtrack/rng.hpp"
#include "ofdmtrack/waveform.hpp"

namespace ofdmtrack {

/// Constraints for random constant-velocity target motion.  Angles are in
/// degrees, ranges in meters, speeds in meters per second.
struct ScenarioParams {
  std::size_t steps = 92;          // recorded tracking steps per trajectory
  double init_range_min = 30.0;
  double init_range_max = 150.0;
  double init_aoa_max_deg = 50.0;
  double speed_min = 5.0;
  double speed_max = 25.0;
  double keep_range_min = 5.0;     // enforced at every recorded step
  double keep_range_max = 300.0;
  double keep_aoa_max_deg = 60.0;
  std::size_t max_attempts = 1000;

  void validate() const;
};

/// Target motion sampled at the frame interval.  truths[k] holds the range,
/// closing velocity and angle at step k; positions holds one extra sample so
/// the last recorded velocity has a forward difference.
struct Trajectory {
  std::vector<TargetTruth> truths;
  std::vector<std::array<double, 2>> positions;  // (cross, boresight) meters
};

/// Deterministic truth sequence from an explicit starting point and velocity
/// vector; no feasibility screening.  The closing velocity at step k is the
/// forward range difference (r_k - r_{k+1}) / dt, so advancing r_k by it
/// reproduces r_{k+1} exactly.
Trajectory trajectory_from_motion(const std::array<double, 2>& start_pos,
                                  const std::array<double, 2>& velocity,
                                  double dt, std::size_t steps);

/// Random trajectory satisfying the scenario constraints at every recorded
/// step.  Draw order per attempt: initial range, initial angle, speed,
/// heading.  Throws InfeasibleError after max_attempts rejected draws.
Trajectory generate_trajectory(const ScenarioParams& params, double dt,
                               RandomStream& rng);

/// Grid quantisation floor of a uniformly spaced estimator: the variance
/// step^2 / 12 of a uniform error over one cell, for a range grid of n_fft
/// points across the unambiguous span and a velocity grid of m_fft points.
struct QuantizationBounds {
  double range_var = 0.0;      // m^2
  double velocity_var = 0.0;   // (m/s)^2
};
QuantizationBounds quantization_bounds(const OfdmConfig& cfg,
                                       std::size_t n_fft, std::size_t m_fft);

/// Average angle estimation bound of a uniform linear array with k elements
/// and n_win snapshots, in squared radians:
///   12 s_n^2 (s_n^2 + k s_s^2) / (pi^2 n_win s_s^4 k^2 (k^2 - 1)).
/// Requires k >= 2; fewer elements carry no angle information.
double crb_aoa_avg(double sigma_s_sq, double sigma_ns_sq, std::size_t k,
                   std::size_t n_win);

/// Theoretical floors reported alongside measured errors.
struct BoundsReport {
  double crb_aoa_avg_rad2 = 0.0;
  double range_bound_m2 = 0.0;
  double velocity_bound_m2s2 = 0.0;
};

/// Per-step error records of one tracked trajectory.
struct TrackErrors {
  std::vector<double> range_err;
  std::vector<double> velocity_err;
  std::vector<double> aoa_err;
  std::vector<double> position_err;
};

/// Per-step aggregate across trajectories: root-mean-square for range,
/// velocity and angle, plain mean for the position distance.
struct StepMetrics {
  double range_rmse = 0.0;
  double velocity_rmse = 0.0;
  double aoa_rmse = 0.0;
  double position_err = 0.0;
};

/// Whole-run aggregate over every step of every trajectory.
struct SummaryMetrics {
  double range_rmse = 0.0;
  double velocity_rmse = 0.0;
  double aoa_rmse = 0.0;
  double position_err = 0.0;   // mean Euclidean distance
};

/// Euclidean distance between two polar points (range, angle off boresight).
double position_distance(double range_a, double aoa_a, double range_b,
                         double aoa_b);

/// Aggregates trajectory error records step by step, in trajectory order.
/// Every record must carry `steps` entries per field.
std::vector<StepMetrics> aggregate_metrics(
    const std::vector<TrackErrors>& tracks, std::size_t steps);

/// Collapses the same records into one figure per metric.  Equals the RMS
/// (mean for position) over the per-step aggregates when every step carries
/// the same trajectory count.
SummaryMetrics summarize_metrics(const std::vector<TrackErrors>& tracks,
                                 std::size_t steps);

/// Nominal per-frame operation counts of every estimation strategy.  The
/// shared map transform costs are accumulated in floating point and rounded
/// once; the filter updates add small integer costs on top, so differences
/// between related strategies are exact.
struct ComplexityTable {
  std::uint64_t rdm = 0;
  std::uint64_t kalman = 0;
  std::uint64_t ebm = 0;
  std::uint64_t zp = 0;
  std::uint64_t czt = 0;
  std::uint64_t kalman_czt = 0;
};
ComplexityTable complexity_table(const OfdmConfig& cfg,
                                 std::size_t pad_factor);

}  // namespace ofdmtrack
