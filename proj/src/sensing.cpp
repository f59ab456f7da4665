// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack/sensing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofdmtrack/transforms.hpp"

namespace ofdmtrack {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_dims(const OfdmConfig& cfg, const ComplexMatrix& m,
                const char* what) {
  if (m.rows() != cfg.n_subcarriers || m.cols() != cfg.n_symbols)
    throw std::invalid_argument(std::string(what) +
                                ": dimensions do not match the config");
}

LinearAxis native_velocity_axis(const OfdmConfig& cfg) {
  const double v_res = cfg.velocity_resolution();
  const double dc = static_cast<double>(cfg.n_symbols / 2);
  return {-dc * v_res, v_res};
}

LinearAxis shifted_velocity_axis(const OfdmConfig& cfg) {
  const double v_res = cfg.velocity_resolution();
  const double half = static_cast<double>(cfg.n_symbols) / 2.0;
  return {-half * v_res, v_res};
}

}  // namespace

ComplexMatrix doppler_dft_stage(const RatioMatrix& y) {
  if (y.empty()) throw std::invalid_argument("doppler_dft_stage: empty input");
  const std::size_t n_rows = y.rows();
  const std::size_t m_cols = y.cols();
  ComplexMatrix stage(n_rows, m_cols);
  for (std::size_t n = 0; n < n_rows; ++n) {
    const auto spec = fft_1d(std::span<const cplx>(y.row(n), m_cols));
    std::copy(spec.begin(), spec.end(), stage.row(n));
  }
  return stage;
}

ComplexMatrix doppler_czt_stage(const RatioMatrix& y,
                                std::size_t n_velocity_out) {
  if (y.empty()) throw std::invalid_argument("doppler_czt_stage: empty input");
  if (n_velocity_out == 0)
    throw std::invalid_argument("doppler_czt_stage: zero output length");
  const std::size_t n_rows = y.rows();
  const std::size_t m_cols = y.cols();

  // Starting point -1 shifts the evaluated grid down by half the symbol
  // sampling rate, placing column k at frequency (k - M/2) / M.
  const CztParams params{cplx(-1.0, 0.0),
                         std::polar(1.0, -2.0 * kPi /
                                             static_cast<double>(m_cols)),
                         n_velocity_out};
  const CztPlan plan(m_cols, params);

  ComplexMatrix stage(n_rows, n_velocity_out);
  for (std::size_t n = 0; n < n_rows; ++n)
    plan.apply(std::span<const cplx>(y.row(n), m_cols),
               std::span<cplx>(stage.row(n), n_velocity_out));
  return stage;
}

RangeDopplerMap rdm_from_doppler_dft(const OfdmConfig& cfg,
                                     const ComplexMatrix& stage,
                                     std::size_t pad_factor) {
  check_dims(cfg, stage, "rdm_from_doppler_dft");
  if (!is_pow2(pad_factor))
    throw std::invalid_argument(
        "rdm_from_doppler_dft: pad factor must be a power of two");

  const std::size_t n = cfg.n_subcarriers;
  const std::size_t m_cols = cfg.n_symbols;
  const std::size_t n_pad = n * pad_factor;
  const std::size_t dc = m_cols / 2;

  RangeDopplerMap map;
  map.n_range = n_pad;
  map.n_velocity = m_cols;
  map.power.resize(n_pad * m_cols);
  map.range_axis = {0.0, cfg.range_resolution() /
                             static_cast<double>(pad_factor)};
  map.velocity_axis = native_velocity_axis(cfg);

  std::vector<cplx> column(n);
  std::vector<cplx> profile(n_pad);
  for (std::size_t l = 0; l < m_cols; ++l) {
    for (std::size_t row = 0; row < n; ++row) column[row] = stage.at(row, l);
    fft_padded_pow2(column, pad_factor, true, profile);
    const std::size_t i = (l + dc) % m_cols;  // rotate zero velocity to dc
    for (std::size_t p = 0; p < n_pad; ++p)
      map.power[p * m_cols + i] = std::norm(profile[p]);
  }
  return map;
}

PeakEstimate zeropad_peak_from_doppler_dft(const OfdmConfig& cfg,
                                           const ComplexMatrix& stage,
                                           std::size_t pad_factor) {
  check_dims(cfg, stage, "zeropad_peak_from_doppler_dft");
  if (!is_pow2(pad_factor))
    throw std::invalid_argument(
        "zeropad_peak_from_doppler_dft: pad factor must be a power of two");

  const std::size_t n = cfg.n_subcarriers;
  const std::size_t m_cols = cfg.n_symbols;
  const std::size_t n_pad = n * pad_factor;
  const std::size_t dc = m_cols / 2;

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_p = 0, best_i = 0;
  bool found = false;

  std::vector<cplx> column(n);
  std::vector<cplx> profile(n_pad);
  for (std::size_t l = 0; l < m_cols; ++l) {
    for (std::size_t row = 0; row < n; ++row) column[row] = stage.at(row, l);
    fft_padded_pow2(column, pad_factor, true, profile);
    const std::size_t i = (l + dc) % m_cols;
    for (std::size_t p = 0; p < n_pad; ++p) {
      const double pw = std::norm(profile[p]);
      // Same winner as a range-major scan of the materialised map: larger
      // power first, then smaller range bin, then smaller velocity column.
      if (pw > best ||
          (pw == best && (p < best_p || (p == best_p && i < best_i)))) {
        best = pw;
        best_p = p;
        best_i = i;
        found = true;
      }
    }
  }

  if (!found || !std::isfinite(best) || !(best > 0.0))
    throw DetectionError("map carries no positive finite power");

  const LinearAxis range_axis{0.0, cfg.range_resolution() /
                                       static_cast<double>(pad_factor)};
  const LinearAxis velocity_axis = native_velocity_axis(cfg);
  return {range_axis.value(best_p), velocity_axis.value(best_i), best, best_p,
          best_i};
}

RangeDopplerMap zoom_from_doppler_czt(const OfdmConfig& cfg,
                                      const ComplexMatrix& stage,
                                      const ZoomWindow& window,
                                      std::size_t n_range_out) {
  if (stage.rows() != cfg.n_subcarriers || stage.cols() == 0)
    throw std::invalid_argument(
        "zoom_from_doppler_czt: stage dimensions do not match the config");
  if (n_range_out == 0)
    throw std::invalid_argument("zoom_from_doppler_czt: zero output length");
  if (!(window.span_m >= 1e-12))
    throw std::invalid_argument(
        "zoom_from_doppler_czt: span is degenerate (below 1e-12 m)");

  const std::size_t n = cfg.n_subcarriers;
  const std::size_t n_vel = stage.cols();
  const double max_range =
      static_cast<double>(n) * cfg.range_resolution();
  const double start = std::max(0.0, window.center_range_m - window.span_m / 2);
  const double step = window.span_m / static_cast<double>(n_range_out);

  // Chirp transform of the conjugated spectra evaluates the range profile on
  // the window grid; conjugation flips the subcarrier phase ramp so the plain
  // a^{-n} w^{np} kernel walks forward from `start` in steps of `step`.
  const CztParams params{
      std::polar(1.0, 2.0 * kPi * start / max_range),
      std::polar(1.0, -2.0 * kPi * step / max_range),
      n_range_out};
  const CztPlan plan(n, params);

  RangeDopplerMap map;
  map.n_range = n_range_out;
  map.n_velocity = n_vel;
  map.power.resize(n_range_out * n_vel);
  map.range_axis = {start, step};
  map.velocity_axis = shifted_velocity_axis(cfg);

  std::vector<cplx> column(n);
  std::vector<cplx> profile(n_range_out);
  for (std::size_t k = 0; k < n_vel; ++k) {
    for (std::size_t row = 0; row < n; ++row)
      column[row] = std::conj(stage.at(row, k));
    plan.apply(column, profile);
    for (std::size_t p = 0; p < n_range_out; ++p)
      map.power[p * n_vel + k] = std::norm(profile[p]);
  }
  return map;
}

RangeDopplerMap compute_rdm(const OfdmConfig& cfg, const RatioMatrix& y) {
  check_dims(cfg, y, "compute_rdm");
  return rdm_from_doppler_dft(cfg, doppler_dft_stage(y), 1);
}

RangeDopplerMap compute_rdm_zeropad(const OfdmConfig& cfg,
                                    const RatioMatrix& y,
                                    std::size_t pad_factor) {
  check_dims(cfg, y, "compute_rdm_zeropad");
  return rdm_from_doppler_dft(cfg, doppler_dft_stage(y), pad_factor);
}

RangeDopplerMap compute_zoom(const OfdmConfig& cfg, const RatioMatrix& y,
                             const ZoomWindow& window,
                             std::size_t n_range_out,
                             std::size_t n_velocity_out) {
  check_dims(cfg, y, "compute_zoom");
  return zoom_from_doppler_czt(cfg, doppler_czt_stage(y, n_velocity_out),
                               window, n_range_out);
}

PeakEstimate detect_peak(const RangeDopplerMap& map) {
  if (map.n_range == 0 || map.n_velocity == 0 ||
      map.power.size() != map.n_range * map.n_velocity)
    throw std::invalid_argument("detect_peak: malformed map");

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_p = 0, best_l = 0;
  const double* cell = map.power.data();
  for (std::size_t p = 0; p < map.n_range; ++p)
    for (std::size_t l = 0; l < map.n_velocity; ++l, ++cell) {
      if (*cell > best) {
        best = *cell;
        best_p = p;
        best_l = l;
      }
    }

  if (!std::isfinite(best) || !(best > 0.0))
    throw DetectionError("map carries no positive finite power");
  return {map.range_axis.value(best_p), map.velocity_axis.value(best_l), best,
          best_p, best_l};
}

}  // namespace ofdmtrack
