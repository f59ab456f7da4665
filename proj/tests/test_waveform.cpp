// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ofdmtrack/waveform.hpp"

using namespace ofdmtrack;

namespace {

OfdmConfig default_config() { return OfdmConfig{}; }

OfdmConfig small_config() {
  OfdmConfig cfg;
  cfg.n_subcarriers = 64;
  cfg.n_symbols = 16;
  cfg.n_cp = 30;
  cfg.n_antennas = 4;
  cfg.n_aoa_snapshots = 8;
  return cfg;
}

// Noise-free ratio-matrix entry straight from the two phase ramps.
cplx model_entry(const OfdmConfig& cfg, const TargetTruth& t, std::size_t n,
                 std::size_t m) {
  const double tau = 2.0 * t.range_m / kSpeedOfLight;
  const double doppler = 2.0 * t.radial_velocity_mps * cfg.carrier_hz /
                         kSpeedOfLight;
  const double phase = -2.0 * kPi * static_cast<double>(n) *
                           cfg.subcarrier_spacing() * tau +
                       2.0 * kPi * doppler * static_cast<double>(m) *
                           cfg.block_duration();
  return std::polar(1.0, phase);
}

ArraySnapshots steering_snapshots(std::size_t k, std::size_t t_count,
                                  double aoa_rad,
                                  const std::vector<cplx>& sources) {
  ArraySnapshots s;
  s.n_antennas = k;
  s.n_snapshots = t_count;
  s.data.resize(k * t_count);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t t = 0; t < t_count; ++t)
      s.at(a, t) = sources[t] * std::polar(1.0, kPi * static_cast<double>(a) *
                                                    std::sin(aoa_rad));
  return s;
}

constexpr double kDeg = kPi / 180.0;

}  // namespace

TEST_CASE("derived config quantities match the closed forms") {
  const OfdmConfig cfg = default_config();
  CHECK(cfg.subcarrier_spacing() == doctest::Approx(12207.03125).epsilon(1e-12));
  CHECK(cfg.block_duration() == doctest::Approx(8.312e-5).epsilon(1e-12));
  CHECK(cfg.frame_interval() == doctest::Approx(0.02152808).epsilon(1e-12));
  CHECK(cfg.range_resolution() == doctest::Approx(5.99584916).epsilon(1e-12));
  CHECK(cfg.velocity_resolution() ==
        doctest::Approx(1.3925647712197279).epsilon(1e-12));
  CHECK(cfg.cp_range_limit() == doctest::Approx(179.8754748).epsilon(1e-12));
  CHECK(cfg.max_unambiguous_range() ==
        doctest::Approx(2048.0 * 5.99584916).epsilon(1e-12));
}

TEST_CASE("combining gain folds into the sensing SNR") {
  OfdmConfig cfg = default_config();
  CHECK(cfg.sensing_snr_db() ==
        doctest::Approx(12.041199826559248).epsilon(1e-12));
  cfg.tx_split_penalty = true;
  CHECK(cfg.sensing_snr_db() ==
        doctest::Approx(12.041199826559248 - 3.010299956639812)
            .epsilon(1e-12));
  cfg.tx_split_penalty = false;
  cfg.n_antennas = 1;
  cfg.snr_phi_db = -7.5;
  CHECK(cfg.sensing_snr_db() == doctest::Approx(-7.5).epsilon(1e-12));
}

TEST_CASE("config validation rejects degenerate parameter sets") {
  OfdmConfig cfg = default_config();
  CHECK_NOTHROW(cfg.validate());

  OfdmConfig bad = cfg;
  bad.n_subcarriers = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.n_subcarriers = 100;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.n_symbols = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.bandwidth_hz = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.carrier_hz = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.n_antennas = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.n_aoa_snapshots = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("frames are unit-modulus QPSK and reproducible per seed") {
  const OfdmConfig cfg = small_config();
  RandomStream rng(42);
  const ComplexMatrix frame = generate_frame(cfg, rng);
  REQUIRE(frame.rows() == cfg.n_subcarriers);
  REQUIRE(frame.cols() == cfg.n_symbols);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  cplx sum = 0.0;
  for (std::size_t n = 0; n < frame.rows(); ++n)
    for (std::size_t m = 0; m < frame.cols(); ++m) {
      const cplx v = frame.at(n, m);
      CHECK(std::abs(std::abs(v.real()) - inv_sqrt2) < 1e-15);
      CHECK(std::abs(std::abs(v.imag()) - inv_sqrt2) < 1e-15);
      sum += v;
    }
  const double count = static_cast<double>(frame.rows() * frame.cols());
  CHECK(std::abs(sum) / count < 0.1);  // symbols average out

  RandomStream rng2(42);
  const ComplexMatrix again = generate_frame(cfg, rng2);
  bool identical = true;
  for (std::size_t i = 0; i < count && identical; ++i)
    identical = frame.data()[i] == again.data()[i];
  CHECK(identical);

  RandomStream rng3(43);
  const ComplexMatrix other = generate_frame(cfg, rng3);
  bool differs = false;
  for (std::size_t i = 0; i < count && !differs; ++i)
    differs = frame.data()[i] != other.data()[i];
  CHECK(differs);
}

TEST_CASE("noise-free ratio matrix is the product of two phase ramps") {
  OfdmConfig cfg = small_config();
  cfg.noise_enabled = false;
  TargetTruth truth{101.92943572, 7.25, 0.1};  // 17 range bins

  RandomStream rng(7);
  const ComplexMatrix frame = generate_frame(cfg, rng);
  const RatioMatrix y = synthesize_ratio_matrix(cfg, truth, frame, rng);
  REQUIRE(y.rows() == cfg.n_subcarriers);
  REQUIRE(y.cols() == cfg.n_symbols);

  for (std::size_t n = 0; n < y.rows(); n += 5)
    for (std::size_t m = 0; m < y.cols(); ++m) {
      const cplx want = model_entry(cfg, truth, n, m);
      CHECK(std::abs(y.at(n, m) - want) < 1e-12);
    }

  // A target on an integer range bin advances exactly 17/64 cycles per
  // subcarrier, so row 64/gcd repeats; spot-check the wraparound row.
  CHECK(std::abs(y.at(0, 0) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("ratio-matrix noise power matches the folded sensing SNR") {
  OfdmConfig cfg = default_config();  // 0 dB per antenna, 16 antennas
  cfg.n_symbols = 64;                 // keep the sample count moderate
  TargetTruth truth{80.0, -3.0, 0.0};

  RandomStream rng(11);
  const ComplexMatrix frame = generate_frame(cfg, rng);
  const RatioMatrix y = synthesize_ratio_matrix(cfg, truth, frame, rng);

  double acc = 0.0;
  for (std::size_t n = 0; n < y.rows(); ++n)
    for (std::size_t m = 0; m < y.cols(); ++m) {
      const cplx noise = y.at(n, m) - model_entry(cfg, truth, n, m);
      acc += std::norm(noise);
    }
  const double var = acc / static_cast<double>(y.rows() * y.cols());
  CHECK(var == doctest::Approx(1.0 / 16.0).epsilon(0.05));
}

TEST_CASE("echo delays at or past the cyclic prefix are rejected") {
  OfdmConfig cfg = small_config();
  RandomStream rng(3);
  const ComplexMatrix frame = generate_frame(cfg, rng);

  TargetTruth at_limit{cfg.cp_range_limit(), 0.0, 0.0};
  CHECK_THROWS_AS(synthesize_ratio_matrix(cfg, at_limit, frame, rng),
                  OutOfModelError);
  TargetTruth beyond{cfg.cp_range_limit() + 25.0, 0.0, 0.0};
  CHECK_THROWS_AS(synthesize_ratio_matrix(cfg, beyond, frame, rng),
                  OutOfModelError);
  TargetTruth negative{-1.0, 0.0, 0.0};
  CHECK_THROWS_AS(synthesize_ratio_matrix(cfg, negative, frame, rng),
                  OutOfModelError);
  TargetTruth inside{cfg.cp_range_limit() - 1.0, 0.0, 0.0};
  CHECK_NOTHROW(synthesize_ratio_matrix(cfg, inside, frame, rng));
}

TEST_CASE("mismatched frame dimensions are rejected") {
  OfdmConfig cfg = small_config();
  RandomStream rng(5);
  ComplexMatrix frame(8, 8);
  TargetTruth truth{50.0, 0.0, 0.0};
  CHECK_THROWS_AS(synthesize_ratio_matrix(cfg, truth, frame, rng),
                  std::invalid_argument);
}

TEST_CASE("noise-free snapshots factor into source times steering vector") {
  OfdmConfig cfg = small_config();
  cfg.noise_enabled = false;
  const double aoa = 23.0 * kDeg;
  TargetTruth truth{60.0, 0.0, aoa};

  RandomStream rng(17);
  const ArraySnapshots s = synthesize_array_snapshots(cfg, truth, rng);
  REQUIRE(s.n_antennas == cfg.n_antennas);
  REQUIRE(s.n_snapshots == cfg.n_aoa_snapshots);

  for (std::size_t t = 0; t < s.n_snapshots; ++t) {
    const cplx base = s.at(0, t);
    CHECK(std::abs(base) > 0.0);
    for (std::size_t a = 1; a < s.n_antennas; ++a) {
      const cplx want =
          base * std::polar(1.0, kPi * static_cast<double>(a) * std::sin(aoa));
      CHECK(std::abs(s.at(a, t) - want) < 1e-12 * std::abs(base));
    }
  }
}

TEST_CASE("snapshot signal and noise powers follow the per-antenna SNR") {
  OfdmConfig cfg = default_config();
  cfg.snr_phi_db = 6.0;
  cfg.n_aoa_snapshots = 4096;
  TargetTruth truth{60.0, 0.0, 0.0};  // boresight: signal identical per antenna

  RandomStream rng(29);
  const ArraySnapshots s = synthesize_array_snapshots(cfg, truth, rng);

  // At boresight the cross-antenna mean isolates the source; the residual is
  // noise.  Signal power ~ 10^{0.6}, noise power ~ 1 per antenna.
  const double k = static_cast<double>(s.n_antennas);
  double sig = 0.0, noi = 0.0;
  for (std::size_t t = 0; t < s.n_snapshots; ++t) {
    cplx mean = 0.0;
    for (std::size_t a = 0; a < s.n_antennas; ++a) mean += s.at(a, t);
    mean /= k;
    sig += std::norm(mean);
    for (std::size_t a = 0; a < s.n_antennas; ++a)
      noi += std::norm(s.at(a, t) - mean);
  }
  const double t_count = static_cast<double>(s.n_snapshots);
  // E|mean|^2 = P_s + P_n/K; residual sums to (K-1) P_n per snapshot.
  const double p_n = noi / (t_count * (k - 1.0));
  const double p_s = sig / t_count - p_n / k;
  CHECK(p_n == doctest::Approx(1.0).epsilon(0.05));
  CHECK(p_s == doctest::Approx(std::pow(10.0, 0.6)).epsilon(0.05));
}

TEST_CASE("beamscan recovers a grid-aligned angle exactly") {
  std::vector<cplx> sources;
  RandomStream rng(101);
  for (int t = 0; t < 8; ++t) sources.push_back(rng.circular_gaussian(2.0));
  const double aoa = 10.0 * kDeg;  // exactly on the 0.01 degree grid
  const ArraySnapshots s = steering_snapshots(16, 8, aoa, sources);

  const double est = bartlett_aoa(s, 0.01 * kDeg, 60.0 * kDeg);
  CHECK(est == doctest::Approx(aoa).epsilon(1e-12));

  // Scaling every snapshot leaves the argmax unchanged.
  ArraySnapshots scaled = s;
  for (auto& v : scaled.data) v *= cplx(0.0, -3.0);
  CHECK(bartlett_aoa(scaled, 0.01 * kDeg, 60.0 * kDeg) ==
        doctest::Approx(aoa).epsilon(1e-12));
}

TEST_CASE("beamscan off-grid angles round to a neighbouring grid point") {
  std::vector<cplx> sources(4, cplx(1.0, 0.0));
  const double aoa = 10.004 * kDeg;
  const ArraySnapshots s = steering_snapshots(16, 4, aoa, sources);
  const double est = bartlett_aoa(s, 0.01 * kDeg, 60.0 * kDeg);
  CHECK(std::abs(est - aoa) < 0.01 * kDeg);
}

TEST_CASE("a flat spectrum resolves to the lowest scanned angle") {
  // Orthogonal snapshots make the sample covariance proportional to the
  // identity, so every scan angle scores the same.
  ArraySnapshots s;
  s.n_antennas = 2;
  s.n_snapshots = 2;
  s.data = {cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0)};
  const double est = bartlett_aoa(s, 0.01 * kDeg, 60.0 * kDeg);
  CHECK(est == doctest::Approx(-60.0 * kDeg).epsilon(1e-12));
}

TEST_CASE("beamscan rejects empty or single-antenna input") {
  ArraySnapshots empty;
  CHECK_THROWS_AS(bartlett_aoa(empty, 0.01 * kDeg, 60.0 * kDeg),
                  std::invalid_argument);

  ArraySnapshots one;
  one.n_antennas = 1;
  one.n_snapshots = 4;
  one.data.assign(4, cplx(1.0, 0.0));
  CHECK_THROWS_AS(bartlett_aoa(one, 0.01 * kDeg, 60.0 * kDeg),
                  std::invalid_argument);

  ArraySnapshots silent;
  silent.n_antennas = 4;
  silent.n_snapshots = 4;
  silent.data.assign(16, cplx(0.0, 0.0));
  CHECK_THROWS_AS(bartlett_aoa(silent, 0.01 * kDeg, 60.0 * kDeg),
                  EstimationError);

  ArraySnapshots fine = steering_snapshots(4, 4, 0.0,
                                           std::vector<cplx>(4, cplx(1, 0)));
  CHECK_THROWS_AS(bartlett_aoa(fine, 0.0, 60.0 * kDeg), std::invalid_argument);
  CHECK_THROWS_AS(bartlett_aoa(fine, 0.01 * kDeg, 0.0), std::invalid_argument);
}

TEST_CASE("noisy beamscan at the reference operating point stays tight") {
  OfdmConfig cfg = default_config();  // 16 antennas, 256 snapshots, 0 dB
  const double aoa = 10.0 * kDeg;
  TargetTruth truth{90.0, 5.0, aoa};

  RandomStream rng(4242);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const ArraySnapshots s = synthesize_array_snapshots(cfg, truth, rng);
    const double est = bartlett_aoa(s, 0.01 * kDeg, 60.0 * kDeg);
    worst = std::max(worst, std::abs(est - aoa));
  }
  CHECK(worst < 0.5 * kDeg);
}
