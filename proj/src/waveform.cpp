// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofdmtrack {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

double OfdmConfig::sensing_snr_db() const {
  double db = snr_phi_db + 10.0 * std::log10(static_cast<double>(n_antennas));
  if (tx_split_penalty) db -= 10.0 * std::log10(2.0);
  return db;
}

void OfdmConfig::validate() const {
  if (!is_pow2(n_subcarriers) || n_subcarriers < 2)
    throw std::invalid_argument(
        "n_subcarriers must be a power of two and at least 2");
  if (n_symbols < 1) throw std::invalid_argument("n_symbols must be positive");
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("bandwidth_hz must be positive");
  if (!(carrier_hz > 0.0))
    throw std::invalid_argument("carrier_hz must be positive");
  if (n_antennas < 1)
    throw std::invalid_argument("n_antennas must be positive");
  if (n_aoa_snapshots < 1)
    throw std::invalid_argument("n_aoa_snapshots must be positive");
}

ComplexMatrix generate_frame(const OfdmConfig& cfg, RandomStream& rng) {
  cfg.validate();
  ComplexMatrix frame(cfg.n_subcarriers, cfg.n_symbols);
  for (cplx& v : frame.data()) v = rng.qpsk();
  return frame;
}

RatioMatrix synthesize_ratio_matrix(const OfdmConfig& cfg,
                                    const TargetTruth& truth,
                                    const ComplexMatrix& frame,
                                    RandomStream& rng) {
  cfg.validate();
  if (frame.rows() != cfg.n_subcarriers || frame.cols() != cfg.n_symbols)
    throw std::invalid_argument("frame dimensions do not match the config");
  if (truth.range_m < 0.0)
    throw OutOfModelError("target range is negative");

  const double tau = 2.0 * truth.range_m / kSpeedOfLight;
  if (tau >= cfg.cp_duration())
    throw OutOfModelError("echo delay " + std::to_string(tau) +
                          " s reaches the cyclic prefix duration");

  const double doppler =
      2.0 * truth.radial_velocity_mps * cfg.carrier_hz / kSpeedOfLight;
  const double range_step = -2.0 * kPi * cfg.subcarrier_spacing() * tau;
  const double doppler_step = 2.0 * kPi * doppler * cfg.block_duration();

  const std::size_t n_rows = cfg.n_subcarriers;
  const std::size_t n_cols = cfg.n_symbols;
  std::vector<cplx> doppler_ramp(n_cols);
  for (std::size_t m = 0; m < n_cols; ++m)
    doppler_ramp[m] = std::polar(1.0, doppler_step * static_cast<double>(m));

  const double noise_var =
      cfg.noise_enabled ? std::pow(10.0, -cfg.sensing_snr_db() / 10.0) : 0.0;

  RatioMatrix y(n_rows, n_cols);
  for (std::size_t n = 0; n < n_rows; ++n) {
    const cplx row_phase = std::polar(1.0, range_step * static_cast<double>(n));
    cplx* out = y.row(n);
    const cplx* tx = frame.row(n);
    if (cfg.noise_enabled) {
      for (std::size_t m = 0; m < n_cols; ++m)
        out[m] = row_phase * doppler_ramp[m] +
                 rng.circular_gaussian(noise_var) / tx[m];
    } else {
      for (std::size_t m = 0; m < n_cols; ++m)
        out[m] = row_phase * doppler_ramp[m];
    }
  }
  return y;
}

ArraySnapshots synthesize_array_snapshots(const OfdmConfig& cfg,
                                          const TargetTruth& truth,
                                          RandomStream& rng) {
  cfg.validate();
  const std::size_t k = cfg.n_antennas;
  const std::size_t t_count = cfg.n_aoa_snapshots;
  const double source_var = std::pow(10.0, cfg.snr_phi_db / 10.0);
  const double sin_aoa = std::sin(truth.aoa_rad);

  std::vector<cplx> steering(k);
  for (std::size_t a = 0; a < k; ++a)
    steering[a] = std::polar(1.0, kPi * static_cast<double>(a) * sin_aoa);

  ArraySnapshots s;
  s.n_antennas = k;
  s.n_snapshots = t_count;
  s.data.resize(k * t_count);
  for (std::size_t t = 0; t < t_count; ++t) {
    const cplx source = rng.circular_gaussian(source_var);
    if (cfg.noise_enabled) {
      for (std::size_t a = 0; a < k; ++a)
        s.at(a, t) = source * steering[a] + rng.circular_gaussian(1.0);
    } else {
      for (std::size_t a = 0; a < k; ++a) s.at(a, t) = source * steering[a];
    }
  }
  return s;
}

double bartlett_aoa(const ArraySnapshots& snaps, double grid_step_rad,
                    double sector_rad) {
  const std::size_t k = snaps.n_antennas;
  const std::size_t t_count = snaps.n_snapshots;
  if (k < 2) throw std::invalid_argument("beamscan needs at least 2 antennas");
  if (t_count < 1) throw std::invalid_argument("beamscan needs snapshots");
  if (snaps.data.size() != k * t_count)
    throw std::invalid_argument("snapshot buffer size mismatch");
  if (!(grid_step_rad > 0.0))
    throw std::invalid_argument("grid step must be positive");
  if (!(sector_rad > 0.0))
    throw std::invalid_argument("scan sector must be positive");

  // The scan power a(phi)^H C a(phi) depends on the sample covariance C only
  // through its diagonal sums, one complex number per antenna lag.
  std::vector<cplx> lag(k, cplx(0.0, 0.0));
  for (std::size_t t = 0; t < t_count; ++t)
    for (std::size_t d = 0; d < k; ++d)
      for (std::size_t a = 0; a + d < k; ++a)
        lag[d] += snaps.at(a, t) * std::conj(snaps.at(a + d, t));

  if (!(lag[0].real() > 0.0))
    throw EstimationError("snapshots carry no energy");

  const std::size_t n_grid =
      static_cast<std::size_t>(std::llround(2.0 * sector_rad / grid_step_rad)) +
      1;
  double best_power = -1.0;
  double best_angle = -sector_rad;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double angle = -sector_rad + static_cast<double>(i) * grid_step_rad;
    const cplx unit = std::polar(1.0, kPi * std::sin(angle));
    cplx phase = unit;
    double power = lag[0].real();
    for (std::size_t d = 1; d < k; ++d) {
      power += 2.0 * (lag[d] * phase).real();
      phase *= unit;
    }
    if (power > best_power) {
      best_power = power;
      best_angle = angle;
    }
  }
  return best_angle;
}

}  // namespace ofdmtrack
