// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>

#include "ofdmtrack/sensing.hpp"
#include "ofdmtrack/waveform.hpp"

namespace ofdmtrack {

using Vec3 = std::array<double, 3>;

/// Dense 3x3 matrix, row major.
struct Mat3 {
  std::array<double, 9> m{};

  double& at(std::size_t r, std::size_t c) { return m[r * 3 + c]; }
  double at(std::size_t r, std::size_t c) const { return m[r * 3 + c]; }

  static Mat3 identity();
  static Mat3 diagonal(double a, double b, double c);

  Mat3 transpose() const;
  /// Adjugate inverse.  Throws NumericalError when the determinant is zero
  /// or not finite.
  Mat3 inverse() const;

  Mat3 operator+(const Mat3& o) const;
  Mat3 operator-(const Mat3& o) const;
  Mat3 operator*(const Mat3& o) const;
  Vec3 operator*(const Vec3& v) const;
};

/// Filter state over (range, radial velocity, angle of arrival).
struct TrackState {
  Vec3 x{};
  Mat3 cov{};
};

/// Constant-velocity process and measurement model.  The transition couples
/// range to velocity with a negative sign: positive radial velocity closes
/// the range by velocity * frame_interval each step.
struct KalmanConfig {
  Mat3 f;
  Mat3 sigma_pred;
  Mat3 sigma_meas;
  double frame_interval = 0.0;
};

/// Model used throughout: measurement variances (4.4, 0.01, 0.01), process
/// variances (1.3e-5, 0.8, 0.4), transition from cfg.frame_interval().
KalmanConfig default_kalman(const OfdmConfig& cfg);

/// x' = F x, P' = F P F^T + sigma_pred.
TrackState kalman_predict(const TrackState& state, const KalmanConfig& kcfg);

/// Standard gain update with measurement covariance `r`; the posterior
/// covariance is re-symmetrised.  Throws NumericalError when the innovation
/// covariance cannot be inverted.
TrackState kalman_update(const TrackState& predicted, const Vec3& z,
                         const Mat3& r);

/// Running state of the midpoint smoother: the smoothed range and the raw
/// range measurement it last consumed.
struct EbmState {
  double range = 0.0;
  double prev_measurement = 0.0;
};

/// One smoother step on a raw (range, velocity) measurement.  A measurement
/// that moved by more than `equal_tol` against the previous one is averaged
/// with it; an unchanged measurement instead advances the smoothed range by
/// the measured closing velocity.
void ebm_step(EbmState& state, double range_meas, double velocity_meas,
              double frame_interval, double equal_tol);

/// Window geometry and measurement of one predicted-window tracker step.
struct ZoomTrackDiag {
  ZoomWindow window;
  double grid_step = 0.0;
  Vec3 z{};
};

/// One tracker step that zooms where the filter expects the target: predict,
/// evaluate a window of 6 predicted-range standard deviations (at least
/// 0.01 m) on n_range_out points, take the peak as the range/velocity
/// measurement, and update with the range measurement variance replaced by
/// the quantisation variance step^2 / 12 of the evaluated grid.
TrackState zoom_tracked_step(const OfdmConfig& cfg, const KalmanConfig& kcfg,
                             const TrackState& state,
                             const ComplexMatrix& doppler_stage,
                             double aoa_meas, std::size_t n_range_out,
                             ZoomTrackDiag* diag = nullptr);

}  // namespace ofdmtrack
