// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "ofdmtrack/types.hpp"

namespace ofdmtrack {

/// Deterministic random stream.  All distributions are implemented on top of
/// the raw mt19937_64 output so that a given seed produces the same draw
/// sequence on every platform; the standard library distribution objects are
/// deliberately avoided because their output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the Marsaglia polar method; one spare is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /// Circularly symmetric complex Gaussian with total variance `variance`
  /// (each axis carries half).
  cplx circular_gaussian(double variance) {
    const double axis = std::sqrt(variance * 0.5);
    return {axis * gaussian(), axis * gaussian()};
  }

  /// Unit-power QPSK symbol, two fresh bits per call drawn from a pooled
  /// 64-bit word.
  cplx qpsk() {
    if (bits_left_ < 2) {
      bit_pool_ = gen_();
      bits_left_ = 64;
    }
    const unsigned two = static_cast<unsigned>(bit_pool_ & 3u);
    bit_pool_ >>= 2;
    bits_left_ -= 2;
    constexpr double h = 0.70710678118654752440;  // 1/sqrt(2)
    return {(two & 1u) ? h : -h, (two & 2u) ? h : -h};
  }

  /// Unit-modulus symbol with uniform random phase.
  cplx unit_phase() {
    const double th = uniform(0.0, 2.0 * kPi);
    return {std::cos(th), std::sin(th)};
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t bit_pool_ = 0;
  int bits_left_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ofdmtrack
