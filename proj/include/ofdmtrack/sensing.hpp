// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "ofdmtrack/types.hpp"
#include "ofdmtrack/waveform.hpp"

namespace ofdmtrack {

/// Uniformly spaced physical axis: value(i) = offset + i * step.
struct LinearAxis {
  double offset = 0.0;
  double step = 1.0;
  double value(std::size_t i) const {
    return offset + static_cast<double>(i) * step;
  }
};

/// Power map over range (rows) and velocity (columns) with physical axes.
struct RangeDopplerMap {
  std::size_t n_range = 0;
  std::size_t n_velocity = 0;
  std::vector<double> power;  // power[p * n_velocity + l]
  LinearAxis range_axis;
  LinearAxis velocity_axis;

  double& at(std::size_t p, std::size_t l) { return power[p * n_velocity + l]; }
  const double& at(std::size_t p, std::size_t l) const {
    return power[p * n_velocity + l];
  }
};

/// Location and value of a map maximum, in bins and physical units.
struct PeakEstimate {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double power = 0.0;
  std::size_t range_bin = 0;
  std::size_t velocity_bin = 0;
};

/// Range window for the zoomed transform.  The evaluated grid starts at
/// max(0, center - span/2) and spans `span_m` meters.
struct ZoomWindow {
  double center_range_m = 0.0;
  double span_m = 0.0;
};

/// Velocity spectra of the ratio matrix: a forward transform over the symbol
/// axis of every subcarrier row.  Output is n_subcarriers x n_symbols with
/// the velocity index still in transform order (zero velocity at column 0).
ComplexMatrix doppler_dft_stage(const RatioMatrix& y);

/// Between-bin velocity spectra shared by the zoomed transforms: each row is
/// evaluated on a grid shifted down by half the unambiguous span, so column k
/// maps to velocity (k - n_symbols/2) * velocity_resolution.
ComplexMatrix doppler_czt_stage(const RatioMatrix& y,
                                std::size_t n_velocity_out);

/// Power map from a precomputed velocity-spectra stage.  pad_factor (a power
/// of two) multiplies the range grid density by zero-padding the subcarrier
/// axis.  Velocity columns are rotated so zero velocity sits at column
/// floor(n_symbols / 2).
RangeDopplerMap rdm_from_doppler_dft(const OfdmConfig& cfg,
                                     const ComplexMatrix& stage,
                                     std::size_t pad_factor);

/// Peak of rdm_from_doppler_dft(cfg, stage, pad_factor) without holding the
/// padded map in memory; returns exactly the same estimate as running
/// detect_peak on the materialised map.
PeakEstimate zeropad_peak_from_doppler_dft(const OfdmConfig& cfg,
                                           const ComplexMatrix& stage,
                                           std::size_t pad_factor);

/// Zoomed power map from a precomputed between-bin velocity stage: every
/// velocity column is evaluated on n_range_out points across the window's
/// range grid using a chirp transform over the subcarrier axis.
RangeDopplerMap zoom_from_doppler_czt(const OfdmConfig& cfg,
                                      const ComplexMatrix& stage,
                                      const ZoomWindow& window,
                                      std::size_t n_range_out);

/// Full-resolution map straight from a ratio matrix.
RangeDopplerMap compute_rdm(const OfdmConfig& cfg, const RatioMatrix& y);

/// Zero-padded map straight from a ratio matrix.
RangeDopplerMap compute_rdm_zeropad(const OfdmConfig& cfg,
                                    const RatioMatrix& y,
                                    std::size_t pad_factor);

/// Zoomed map straight from a ratio matrix.
RangeDopplerMap compute_zoom(const OfdmConfig& cfg, const RatioMatrix& y,
                             const ZoomWindow& window,
                             std::size_t n_range_out,
                             std::size_t n_velocity_out);

/// Strongest cell of the map; ties resolve to the smallest range bin, then
/// the smallest velocity bin.  Throws DetectionError when the map carries no
/// positive finite power.
PeakEstimate detect_peak(const RangeDopplerMap& map);

}  // namespace ofdmtrack
