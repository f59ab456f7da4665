// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofdmtrack {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline constexpr const char* kVersionString = "1.0.0";

/// Raised when a requested operation falls outside the signal model
/// (e.g. a round-trip delay longer than the cyclic prefix).
struct OutOfModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a peak search is handed data with no detectable maximum.
struct DetectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an estimator cannot produce a value (e.g. zero-energy input).
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised on numerical breakdown (singular matrix, non-finite intermediate).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a scenario cannot be realised within the sampling budget.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when result files cannot be created or written; the message
/// carries the offending path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense row-major complex matrix.  Rows index OFDM subcarriers, columns
/// index symbols throughout this library, but the container itself is
/// generic.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  cplx* row(std::size_t r) { return data_.data() + r * cols_; }
  const cplx* row(std::size_t r) const { return data_.data() + r * cols_; }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  bool empty() const { return data_.empty(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Element-wise ratio of received to transmitted frame, the input to all
/// range-Doppler processing.
using RatioMatrix = ComplexMatrix;

}  // namespace ofdmtrack
