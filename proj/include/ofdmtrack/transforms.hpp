// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ofdmtrack/types.hpp"

namespace ofdmtrack {

/// Discrete Fourier transform of x.  Forward uses the e^{-j2pi nk/N} kernel;
/// the inverse uses the conjugate kernel and scales by 1/N so that
/// fft_1d(fft_1d(x), inverse=true) == x.  Power-of-two lengths run on an
/// iterative radix-2 kernel; other lengths fall back to a Bluestein
/// evaluation, so any length is accepted.
std::vector<cplx> fft_1d(std::span<const cplx> x, bool inverse = false);

/// In-place variant of fft_1d for power-of-two lengths (throws otherwise).
void fft_pow2_inplace(std::span<cplx> x, bool inverse);

/// Transform of `seeds` zero-padded to seeds.size()*pad samples, written to
/// `out`.  Seed count and pad factor must both be powers of two.  Produces
/// the same values as running the full transform on the padded vector; the
/// leading butterfly stages of a padded input only shuffle copies around, so
/// they collapse to block broadcasts.
void fft_padded_pow2(std::span<const cplx> seeds, std::size_t pad,
                     bool inverse, std::span<cplx> out);

/// Chirp-Z evaluation points: out[k] = sum_n x[n] * a^{-n} * w^{n k},
/// k = 0..m_out-1.  With a = 1, w = e^{-j2pi/N} and m_out = N this is the
/// forward DFT.
struct CztParams {
  cplx a;
  cplx w;
  std::size_t m_out = 0;
};

/// Reusable chirp-Z plan (Bluestein): the chirp tables and the convolution
/// kernel spectrum are computed once and shared across apply() calls.
/// apply() is const and allocates its own scratch, so a plan may be used
/// from several threads at once.
class CztPlan {
 public:
  CztPlan(std::size_t n_in, const CztParams& params);

  std::size_t input_size() const { return n_in_; }
  std::size_t output_size() const { return m_out_; }

  void apply(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::size_t n_in_;
  std::size_t m_out_;
  std::size_t conv_len_;
  std::vector<cplx> chirp_in_;    // a^{-n} w^{n^2/2}, n = 0..n_in-1
  std::vector<cplx> chirp_out_;   // w^{k^2/2},        k = 0..m_out-1
  std::vector<cplx> kernel_fft_;  // FFT of w^{-n^2/2} wrapped to conv_len
};

/// One-shot chirp-Z transform; builds a plan and applies it.
std::vector<cplx> czt(std::span<const cplx> x, const CztParams& params);

/// Nominal cost of a radix-2 FFT of length n: 5 n log2(n) real operations,
/// rounded to the nearest integer.
std::uint64_t flops_fft(std::uint64_t n);

/// Nominal cost of a Bluestein chirp-Z transform with n inputs and n
/// outputs.  The convolution runs over length-2n FFTs; the whole triple of
/// transforms plus chirp products is charged as 75 * (2n log2(2n)) real
/// operations, rounded to the nearest integer.
std::uint64_t flops_czt(std::uint64_t n);

}  // namespace ofdmtrack
