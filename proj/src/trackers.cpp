// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack/trackers.hpp"

#include <cmath>

namespace ofdmtrack {

Mat3 Mat3::identity() { return diagonal(1.0, 1.0, 1.0); }

Mat3 Mat3::diagonal(double a, double b, double c) {
  Mat3 d{};
  d.at(0, 0) = a;
  d.at(1, 1) = b;
  d.at(2, 2) = c;
  return d;
}

Mat3 Mat3::transpose() const {
  Mat3 t{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) t.at(c, r) = at(r, c);
  return t;
}

Mat3 Mat3::inverse() const {
  const auto& a = m;
  Mat3 adj{};
  adj.m = {a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8],
           a[1] * a[5] - a[2] * a[4], a[5] * a[6] - a[3] * a[8],
           a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
           a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7],
           a[0] * a[4] - a[1] * a[3]};
  const double det = a[0] * adj.m[0] + a[1] * adj.m[3] + a[2] * adj.m[6];
  if (!std::isfinite(det) || det == 0.0)
    throw NumericalError("3x3 matrix is not invertible");
  const double s = 1.0 / det;
  for (auto& v : adj.m) v *= s;
  return adj;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r{};
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
  return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
  Mat3 r{};
  for (std::size_t i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) {
      const double v = at(i, k);
      for (std::size_t j = 0; j < 3; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i)
    r[i] = at(i, 0) * v[0] + at(i, 1) * v[1] + at(i, 2) * v[2];
  return r;
}

KalmanConfig default_kalman(const OfdmConfig& cfg) {
  KalmanConfig k;
  k.frame_interval = cfg.frame_interval();
  k.f = Mat3::identity();
  k.f.at(0, 1) = -k.frame_interval;
  k.sigma_pred = Mat3::diagonal(1.3e-5, 0.8, 0.4);
  k.sigma_meas = Mat3::diagonal(4.4, 0.01, 0.01);
  return k;
}

TrackState kalman_predict(const TrackState& state, const KalmanConfig& kcfg) {
  TrackState p;
  p.x = kcfg.f * state.x;
  p.cov = kcfg.f * state.cov * kcfg.f.transpose() + kcfg.sigma_pred;
  return p;
}

TrackState kalman_update(const TrackState& predicted, const Vec3& z,
                         const Mat3& r) {
  const Mat3 s = predicted.cov + r;
  const Mat3 gain = predicted.cov * s.inverse();

  TrackState post;
  const Vec3 innovation{z[0] - predicted.x[0], z[1] - predicted.x[1],
                        z[2] - predicted.x[2]};
  const Vec3 corr = gain * innovation;
  for (std::size_t i = 0; i < 3; ++i) post.x[i] = predicted.x[i] + corr[i];

  post.cov = (Mat3::identity() - gain) * predicted.cov;
  const Mat3 t = post.cov.transpose();
  for (std::size_t i = 0; i < 9; ++i)
    post.cov.m[i] = 0.5 * (post.cov.m[i] + t.m[i]);
  return post;
}

void ebm_step(EbmState& state, double range_meas, double velocity_meas,
              double frame_interval, double equal_tol) {
  if (std::abs(range_meas - state.prev_measurement) > equal_tol)
    state.range = 0.5 * (range_meas + state.prev_measurement);
  else
    state.range -= frame_interval * velocity_meas;
  state.prev_measurement = range_meas;
}

TrackState zoom_tracked_step(const OfdmConfig& cfg, const KalmanConfig& kcfg,
                             const TrackState& state,
                             const ComplexMatrix& doppler_stage,
                             double aoa_meas, std::size_t n_range_out,
                             ZoomTrackDiag* diag) {
  const TrackState pred = kalman_predict(state, kcfg);

  const double range_var = std::max(0.0, pred.cov.at(0, 0));
  const double span = std::max(6.0 * std::sqrt(range_var), 0.01);
  const ZoomWindow window{pred.x[0], span};

  const RangeDopplerMap map =
      zoom_from_doppler_czt(cfg, doppler_stage, window, n_range_out);
  const PeakEstimate peak = detect_peak(map);
  const Vec3 z{peak.range_m, peak.velocity_mps, aoa_meas};

  Mat3 r = kcfg.sigma_meas;
  const double step = map.range_axis.step;
  r.at(0, 0) = step * step / 12.0;

  if (diag != nullptr) {
    diag->window = window;
    diag->grid_step = step;
    diag->z = z;
  }
  return kalman_update(pred, z, r);
}

}  // namespace ofdmtrack
