// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "ofdmtrack/rng.hpp"
#include "ofdmtrack/types.hpp"

namespace ofdmtrack {

/// Static description of the OFDM frame and the receive array.
struct OfdmConfig {
  double carrier_hz = 5e9;
  double bandwidth_hz = 25e6;
  std::size_t n_subcarriers = 2048;  // power of two
  std::size_t n_symbols = 259;
  std::size_t n_cp = 30;             // cyclic prefix samples
  std::size_t n_antennas = 16;
  std::size_t n_aoa_snapshots = 256;
  double snr_phi_db = 0.0;           // per-antenna SNR of the array path
  bool tx_split_penalty = false;     // halve sensing power when set
  bool noise_enabled = true;

  double subcarrier_spacing() const {
    return bandwidth_hz / static_cast<double>(n_subcarriers);
  }
  double symbol_duration() const {
    return static_cast<double>(n_subcarriers) / bandwidth_hz;
  }
  double cp_duration() const {
    return static_cast<double>(n_cp) / bandwidth_hz;
  }
  /// Symbol plus cyclic prefix.
  double block_duration() const {
    return static_cast<double>(n_subcarriers + n_cp) / bandwidth_hz;
  }
  /// Time between consecutive frames (and between tracker steps).
  double frame_interval() const {
    return static_cast<double>(n_symbols) * block_duration();
  }
  double range_resolution() const {
    return kSpeedOfLight / (2.0 * bandwidth_hz);
  }
  double velocity_resolution() const {
    return kSpeedOfLight / (2.0 * carrier_hz * frame_interval());
  }
  double max_unambiguous_range() const {
    return static_cast<double>(n_subcarriers) * range_resolution();
  }
  /// Largest range whose echo still lands inside the cyclic prefix.
  double cp_range_limit() const {
    return kSpeedOfLight * cp_duration() / 2.0;
  }
  /// Sensing SNR after receive combining across the array; the array gain is
  /// folded into a single scalar so the ratio matrix carries one noise term.
  double sensing_snr_db() const;

  void validate() const;
};

/// Ground-truth target parameters for one frame.
struct TargetTruth {
  double range_m = 0.0;
  double radial_velocity_mps = 0.0;  // positive toward the receiver
  double aoa_rad = 0.0;              // zero at boresight
};

/// Antenna-major snapshot block for angle estimation.
struct ArraySnapshots {
  std::size_t n_antennas = 0;
  std::size_t n_snapshots = 0;
  std::vector<cplx> data;  // data[a * n_snapshots + t]

  cplx& at(std::size_t a, std::size_t t) { return data[a * n_snapshots + t]; }
  const cplx& at(std::size_t a, std::size_t t) const {
    return data[a * n_snapshots + t];
  }
};

/// Random unit-power QPSK frame, n_subcarriers x n_symbols.
ComplexMatrix generate_frame(const OfdmConfig& cfg, RandomStream& rng);

/// Frequency-domain single-target channel applied to a transmitted frame:
/// the returned matrix is the element-wise ratio of received to transmitted
/// symbols, i.e. a phase ramp over subcarriers (delay), a phase ramp over
/// symbols (Doppler), and additive noise divided by the frame.
/// Throws OutOfModelError when the round-trip delay reaches the cyclic
/// prefix duration.
RatioMatrix synthesize_ratio_matrix(const OfdmConfig& cfg,
                                    const TargetTruth& truth,
                                    const ComplexMatrix& frame,
                                    RandomStream& rng);

/// Narrowband snapshots of a half-wavelength uniform linear array observing
/// one source from truth.aoa_rad at the per-antenna SNR of cfg.
ArraySnapshots synthesize_array_snapshots(const OfdmConfig& cfg,
                                          const TargetTruth& truth,
                                          RandomStream& rng);

/// Bartlett beamscan estimate over [-sector_rad, +sector_rad] with the given
/// grid step; ties resolve to the smaller angle.  Returns radians.
double bartlett_aoa(const ArraySnapshots& snaps, double grid_step_rad,
                    double sector_rad);

}  // namespace ofdmtrack
