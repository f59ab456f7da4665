// SPDX-License-Identifier: Apache-2.0
#include "ofdmtrack/transforms.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace ofdmtrack {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct Pow2Tables {
  std::vector<cplx> twiddle;        // e^{-j2pi k/n}, k < n/2
  std::vector<std::uint32_t> brev;  // bit-reversal permutation
};

// Twiddle/bit-reversal tables are cached per length.  The cache is
// thread-local so concurrent workers never contend on it.
const Pow2Tables& pow2_tables(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Pow2Tables>>
      cache;
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto t = std::make_unique<Pow2Tables>();
  t->twiddle.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ph = -2.0 * kPi * static_cast<double>(k) /
                      static_cast<double>(n);
    t->twiddle[k] = {std::cos(ph), std::sin(ph)};
  }
  t->brev.resize(n);
  std::uint32_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (std::uint32_t b = 0; b < bits; ++b)
      r |= ((i >> b) & 1u) << (bits - 1 - b);
    t->brev[i] = r;
  }
  auto& slot = cache[n];
  slot = std::move(t);
  return *slot;
}

void fft_pow2(cplx* x, std::size_t n, bool inverse) {
  if (n == 1) return;
  const Pow2Tables& t = pow2_tables(n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = t.brev[i];
    if (i < j) std::swap(x[i], x[j]);
  }

  const cplx* tw = t.twiddle.data();
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      // j == 0 twiddle is 1; skip the multiply.
      {
        const cplx u = x[base];
        const cplx v = x[base + half];
        x[base] = u + v;
        x[base + half] = u - v;
      }
      std::size_t tk = step;
      for (std::size_t j = 1; j < half; ++j, tk += step) {
        cplx w = tw[tk];
        if (inverse) w = std::conj(w);
        const cplx u = x[base + j];
        const cplx v = x[base + j + half] * w;
        x[base + j] = u + v;
        x[base + j + half] = u - v;
      }
    }
  }

  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] *= s;
  }
}

// Cached full-DFT chirp plans for non-power-of-two lengths.
const CztPlan& dft_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<CztPlan>>
      cache;
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  const cplx w = std::polar(1.0, -2.0 * kPi / static_cast<double>(n));
  auto& slot = cache[n];
  slot = std::make_unique<CztPlan>(n, CztParams{cplx(1.0, 0.0), w, n});
  return *slot;
}

// w^{e/2} for integer e, stable for unit-modulus w and exact enough for the
// moderate |e| used by the convolution chirps.
cplx half_power(const cplx& logw, double e) {
  return std::exp(logw * (0.5 * e));
}

}  // namespace

void fft_pow2_inplace(std::span<cplx> x, bool inverse) {
  if (!is_pow2(x.size()))
    throw std::invalid_argument("fft_pow2_inplace: length not a power of two");
  fft_pow2(x.data(), x.size(), inverse);
}

void fft_padded_pow2(std::span<const cplx> seeds, std::size_t pad,
                     bool inverse, std::span<cplx> out) {
  const std::size_t n_seed = seeds.size();
  if (!is_pow2(n_seed))
    throw std::invalid_argument("fft_padded_pow2: seed count not a power of 2");
  if (!is_pow2(pad))
    throw std::invalid_argument("fft_padded_pow2: pad not a power of 2");
  const std::size_t n = n_seed * pad;
  if (out.size() != n)
    throw std::invalid_argument("fft_padded_pow2: output length mismatch");

  if (pad == 1) {
    std::copy(seeds.begin(), seeds.end(), out.begin());
    fft_pow2(out.data(), n, inverse);
    return;
  }

  // Bit-reversing the padded vector parks the non-zero entries at multiples
  // of pad, in seed-table bit-reversed order.  Up to stage length `pad` every
  // butterfly pairs a value with a zero, so those stages reduce to filling
  // each pad-block with its leading value.
  cplx* x = out.data();
  const Pow2Tables& seed_t = pow2_tables(n_seed);
  for (std::size_t k = 0; k < n_seed; ++k) {
    const cplx v = seeds[seed_t.brev[k]];
    cplx* block = x + k * pad;
    for (std::size_t i = 0; i < pad; ++i) block[i] = v;
  }

  const Pow2Tables& t = pow2_tables(n);
  const cplx* tw = t.twiddle.data();
  for (std::size_t len = 2 * pad; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      {
        const cplx u = x[base];
        const cplx v = x[base + half];
        x[base] = u + v;
        x[base + half] = u - v;
      }
      std::size_t tk = step;
      for (std::size_t j = 1; j < half; ++j, tk += step) {
        cplx w = tw[tk];
        if (inverse) w = std::conj(w);
        const cplx u = x[base + j];
        const cplx v = x[base + j + half] * w;
        x[base + j] = u + v;
        x[base + j + half] = u - v;
      }
    }
  }

  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] *= s;
  }
}

std::vector<cplx> fft_1d(std::span<const cplx> x, bool inverse) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("fft_1d: empty input");
  std::vector<cplx> out(x.begin(), x.end());
  if (is_pow2(n)) {
    fft_pow2(out.data(), n, inverse);
    return out;
  }
  // Bluestein fallback.  The inverse runs the forward plan on the
  // conjugated input: ifft(x) = conj(fft(conj(x))) / n.
  const CztPlan& plan = dft_plan(n);
  if (inverse) {
    for (auto& v : out) v = std::conj(v);
  }
  std::vector<cplx> y(n);
  plan.apply(out, y);
  if (inverse) {
    const double s = 1.0 / static_cast<double>(n);
    for (auto& v : y) v = std::conj(v) * s;
  }
  return y;
}

CztPlan::CztPlan(std::size_t n_in, const CztParams& params)
    : n_in_(n_in), m_out_(params.m_out) {
  if (n_in_ == 0) throw std::invalid_argument("CztPlan: empty input length");
  if (m_out_ == 0) throw std::invalid_argument("CztPlan: zero output length");
  if (params.a == cplx(0.0, 0.0) || params.w == cplx(0.0, 0.0))
    throw std::invalid_argument("CztPlan: a and w must be non-zero");

  conv_len_ = next_pow2(n_in_ + m_out_ - 1);
  const cplx logw = std::log(params.w);
  const cplx loga = std::log(params.a);

  chirp_in_.resize(n_in_);
  for (std::size_t n = 0; n < n_in_; ++n) {
    const double nn = static_cast<double>(n);
    // a^{-n} * w^{n^2/2}
    chirp_in_[n] = std::exp(logw * (0.5 * nn * nn) - loga * nn);
  }

  chirp_out_.resize(m_out_);
  for (std::size_t k = 0; k < m_out_; ++k) {
    const double kk = static_cast<double>(k);
    chirp_out_[k] = half_power(logw, kk * kk);
  }

  // Convolution kernel w^{-i^2/2} placed at wrapped offsets so that the
  // circular convolution evaluates sum_n y[n] w^{-(k-n)^2/2}.
  std::vector<cplx> kernel(conv_len_, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < m_out_; ++k) {
    const double kk = static_cast<double>(k);
    kernel[k] = half_power(logw, -kk * kk);
  }
  for (std::size_t i = 1; i < n_in_; ++i) {
    const double ii = static_cast<double>(i);
    kernel[conv_len_ - i] = half_power(logw, -ii * ii);
  }
  fft_pow2(kernel.data(), conv_len_, false);
  kernel_fft_ = std::move(kernel);
}

void CztPlan::apply(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_in_)
    throw std::invalid_argument("CztPlan::apply: input length mismatch");
  if (out.size() != m_out_)
    throw std::invalid_argument("CztPlan::apply: output length mismatch");

  std::vector<cplx> buf(conv_len_, cplx(0.0, 0.0));
  for (std::size_t n = 0; n < n_in_; ++n) buf[n] = in[n] * chirp_in_[n];
  fft_pow2(buf.data(), conv_len_, false);
  for (std::size_t i = 0; i < conv_len_; ++i) buf[i] *= kernel_fft_[i];
  fft_pow2(buf.data(), conv_len_, true);
  for (std::size_t k = 0; k < m_out_; ++k) out[k] = buf[k] * chirp_out_[k];
}

std::vector<cplx> czt(std::span<const cplx> x, const CztParams& params) {
  CztPlan plan(x.size(), params);
  std::vector<cplx> out(params.m_out);
  plan.apply(x, out);
  return out;
}

std::uint64_t flops_fft(std::uint64_t n) {
  if (n <= 1) return 0;
  const double nd = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::llround(5.0 * nd * std::log2(nd)));
}

std::uint64_t flops_czt(std::uint64_t n) {
  if (n == 0) return 0;
  const double two_n = 2.0 * static_cast<double>(n);
  return static_cast<std::uint64_t>(
      std::llround(75.0 * two_n * std::log2(two_n)));
}

}  // namespace ofdmtrack
