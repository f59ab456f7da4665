// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "ofdmtrack/types.hpp"

namespace ofdmtrack {

namespace {

constexpr double kDegToRad = kPi / 180.0;

double fft_cost(double n) { return n <= 1.0 ? 0.0 : 5.0 * n * std::log2(n); }

double czt_cost(double n) {
  const double two_n = 2.0 * n;
  return 75.0 * two_n * std::log2(two_n);
}

}  // namespace

void ScenarioParams::validate() const {
  if (steps == 0) throw std::invalid_argument("steps must be positive");
  if (!(init_range_min > 0.0) || !(init_range_max >= init_range_min))
    throw std::invalid_argument("initial range window is malformed");
  if (!(init_aoa_max_deg > 0.0) || init_aoa_max_deg > 90.0)
    throw std::invalid_argument("initial angle limit must be in (0, 90] deg");
  if (!(speed_min >= 0.0) || !(speed_max >= speed_min))
    throw std::invalid_argument("speed window is malformed");
  if (!(keep_range_min > 0.0) || !(keep_range_max > keep_range_min))
    throw std::invalid_argument("keep range window is malformed");
  if (!(keep_aoa_max_deg > 0.0) || keep_aoa_max_deg > 90.0)
    throw std::invalid_argument("keep angle limit must be in (0, 90] deg");
  if (max_attempts == 0)
    throw std::invalid_argument("max_attempts must be positive");
}

Trajectory trajectory_from_motion(const std::array<double, 2>& start_pos,
                                  const std::array<double, 2>& velocity,
                                  double dt, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("steps must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  Trajectory traj;
  traj.positions.resize(steps + 1);
  traj.truths.resize(steps);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = dt * static_cast<double>(k);
    traj.positions[k] = {start_pos[0] + t * velocity[0],
                         start_pos[1] + t * velocity[1]};
  }
  for (std::size_t k = 0; k < steps; ++k) {
    const auto& p = traj.positions[k];
    const auto& q = traj.positions[k + 1];
    const double r_now = std::hypot(p[0], p[1]);
    const double r_next = std::hypot(q[0], q[1]);
    traj.truths[k].range_m = r_now;
    // Closing speed, positive toward the receiver.
    traj.truths[k].radial_velocity_mps = (r_now - r_next) / dt;
    traj.truths[k].aoa_rad = std::atan2(p[0], p[1]);
  }
  return traj;
}

Trajectory generate_trajectory(const ScenarioParams& params, double dt,
                               RandomStream& rng) {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

  const double keep_aoa_rad = params.keep_aoa_max_deg * kDegToRad;
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    const double r0 =
        rng.uniform(params.init_range_min, params.init_range_max);
    const double aoa0 =
        rng.uniform(-params.init_aoa_max_deg, params.init_aoa_max_deg) *
        kDegToRad;
    const double speed = rng.uniform(params.speed_min, params.speed_max);
    const double heading = rng.uniform(0.0, 2.0 * kPi);

    const std::array<double, 2> start = {r0 * std::sin(aoa0),
                                         r0 * std::cos(aoa0)};
    const std::array<double, 2> velocity = {speed * std::cos(heading),
                                            speed * std::sin(heading)};
    Trajectory traj =
        trajectory_from_motion(start, velocity, dt, params.steps);

    bool ok = true;
    for (const TargetTruth& truth : traj.truths) {
      if (truth.range_m < params.keep_range_min ||
          truth.range_m > params.keep_range_max ||
          std::abs(truth.aoa_rad) > keep_aoa_rad) {
        ok = false;
        break;
      }
    }
    if (ok) return traj;
  }
  throw InfeasibleError("no feasible trajectory within the attempt budget");
}

QuantizationBounds quantization_bounds(const OfdmConfig& cfg,
                                       std::size_t n_fft, std::size_t m_fft) {
  if (n_fft == 0 || m_fft == 0)
    throw std::invalid_argument("grid sizes must be positive");
  const double range_step =
      kSpeedOfLight /
      (2.0 * static_cast<double>(n_fft) * cfg.subcarrier_spacing());
  const double velocity_step =
      kSpeedOfLight / (2.0 * cfg.carrier_hz * static_cast<double>(m_fft) *
                       cfg.block_duration());
  QuantizationBounds b;
  b.range_var = range_step * range_step / 12.0;
  b.velocity_var = velocity_step * velocity_step / 12.0;
  return b;
}

double crb_aoa_avg(double sigma_s_sq, double sigma_ns_sq, std::size_t k,
                   std::size_t n_win) {
  if (k < 2)
    throw std::invalid_argument("angle bound needs at least two antennas");
  if (n_win == 0)
    throw std::invalid_argument("angle bound needs at least one snapshot");
  if (!(sigma_s_sq > 0.0) || !(sigma_ns_sq > 0.0))
    throw std::invalid_argument("signal and noise powers must be positive");

  const double kd = static_cast<double>(k);
  const double td = static_cast<double>(n_win);
  const double num =
      12.0 * sigma_ns_sq * (sigma_ns_sq + kd * sigma_s_sq);
  const double den = kPi * kPi * td * sigma_s_sq * sigma_s_sq * kd * kd *
                     (kd * kd - 1.0);
  return num / den;
}

double position_distance(double range_a, double aoa_a, double range_b,
                         double aoa_b) {
  const double xa = range_a * std::sin(aoa_a);
  const double ya = range_a * std::cos(aoa_a);
  const double xb = range_b * std::sin(aoa_b);
  const double yb = range_b * std::cos(aoa_b);
  return std::hypot(xa - xb, ya - yb);
}

namespace {

void check_track_shapes(const std::vector<TrackErrors>& tracks,
                        std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("steps must be positive");
  if (tracks.empty()) throw std::invalid_argument("no trajectories recorded");
  for (const TrackErrors& t : tracks) {
    if (t.range_err.size() != steps || t.velocity_err.size() != steps ||
        t.aoa_err.size() != steps || t.position_err.size() != steps)
      throw std::invalid_argument("trajectory record length mismatch");
  }
}

}  // namespace

std::vector<StepMetrics> aggregate_metrics(
    const std::vector<TrackErrors>& tracks, std::size_t steps) {
  check_track_shapes(tracks, steps);
  const double inv_n = 1.0 / static_cast<double>(tracks.size());
  std::vector<StepMetrics> out(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    double sq_r = 0.0, sq_v = 0.0, sq_a = 0.0, sum_p = 0.0;
    for (const TrackErrors& t : tracks) {
      sq_r += t.range_err[s] * t.range_err[s];
      sq_v += t.velocity_err[s] * t.velocity_err[s];
      sq_a += t.aoa_err[s] * t.aoa_err[s];
      sum_p += t.position_err[s];
    }
    out[s].range_rmse = std::sqrt(sq_r * inv_n);
    out[s].velocity_rmse = std::sqrt(sq_v * inv_n);
    out[s].aoa_rmse = std::sqrt(sq_a * inv_n);
    out[s].position_err = sum_p * inv_n;
  }
  return out;
}

SummaryMetrics summarize_metrics(const std::vector<TrackErrors>& tracks,
                                 std::size_t steps) {
  check_track_shapes(tracks, steps);
  double sq_r = 0.0, sq_v = 0.0, sq_a = 0.0, sum_p = 0.0;
  for (const TrackErrors& t : tracks) {
    for (std::size_t s = 0; s < steps; ++s) {
      sq_r += t.range_err[s] * t.range_err[s];
      sq_v += t.velocity_err[s] * t.velocity_err[s];
      sq_a += t.aoa_err[s] * t.aoa_err[s];
      sum_p += t.position_err[s];
    }
  }
  const double inv_n =
      1.0 / (static_cast<double>(tracks.size()) * static_cast<double>(steps));
  SummaryMetrics m;
  m.range_rmse = std::sqrt(sq_r * inv_n);
  m.velocity_rmse = std::sqrt(sq_v * inv_n);
  m.aoa_rmse = std::sqrt(sq_a * inv_n);
  m.position_err = sum_p * inv_n;
  return m;
}

ComplexityTable complexity_table(const OfdmConfig& cfg,
                                 std::size_t pad_factor) {
  cfg.validate();
  if (pad_factor == 0)
    throw std::invalid_argument("pad factor must be positive");

  const double n = static_cast<double>(cfg.n_subcarriers);
  const double m = static_cast<double>(cfg.n_symbols);
  const double n_pad = n * static_cast<double>(pad_factor);
  const double doppler = n * fft_cost(m);  // per-row symbol transforms

  ComplexityTable t;
  t.rdm = static_cast<std::uint64_t>(std::llround(fft_cost(n * m)));
  t.kalman = t.rdm + 50;
  t.ebm = t.rdm + 3;
  t.zp = static_cast<std::uint64_t>(
      std::llround(m * fft_cost(n_pad) + doppler));
  t.czt =
      static_cast<std::uint64_t>(std::llround(m * czt_cost(n) + doppler));
  t.kalman_czt = t.czt + 50;
  return t;
}

}  // namespace ofdmtrack
