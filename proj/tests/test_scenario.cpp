// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ofdmtrack/scenario.hpp"
#include "ofdmtrack/types.hpp"

using namespace ofdmtrack;

namespace {

constexpr double kDeg = kPi / 180.0;

TrackErrors constant_track(std::size_t steps, double r, double v, double a,
                           double p) {
  TrackErrors t;
  t.range_err.assign(steps, r);
  t.velocity_err.assign(steps, v);
  t.aoa_err.assign(steps, a);
  t.position_err.assign(steps, p);
  return t;
}

}  // namespace

TEST_CASE("quantization bounds reproduce the native grid floors") {
  const OfdmConfig cfg;
  const QuantizationBounds b = quantization_bounds(cfg, 2048, 259);
  CHECK(std::sqrt(b.range_var) ==
        doctest::Approx(1.7308525632731957).epsilon(1e-12));
  CHECK(std::sqrt(b.velocity_var) ==
        doctest::Approx(0.40199882276384974).epsilon(1e-12));

  // Sixteen-fold range oversampling divides the floor by sixteen.
  const QuantizationBounds fine = quantization_bounds(cfg, 2048 * 16, 259);
  CHECK(std::sqrt(fine.range_var) ==
        doctest::Approx(0.10817828520457473).epsilon(1e-12));
  CHECK(fine.velocity_var == b.velocity_var);
}

TEST_CASE("quantization bounds shrink with the grid sizes") {
  const OfdmConfig cfg;
  const QuantizationBounds b1 = quantization_bounds(cfg, 1024, 128);
  const QuantizationBounds b2 = quantization_bounds(cfg, 2048, 128);
  const QuantizationBounds b3 = quantization_bounds(cfg, 1024, 256);
  CHECK(b2.range_var == doctest::Approx(b1.range_var / 4.0).epsilon(1e-12));
  CHECK(b2.velocity_var == b1.velocity_var);
  CHECK(b3.velocity_var ==
        doctest::Approx(b1.velocity_var / 4.0).epsilon(1e-12));
  CHECK(b3.range_var == b1.range_var);

  CHECK_THROWS_AS(quantization_bounds(cfg, 0, 128), std::invalid_argument);
  CHECK_THROWS_AS(quantization_bounds(cfg, 1024, 0), std::invalid_argument);
}

TEST_CASE("range bound matches a simulated uniform quantisation error") {
  const OfdmConfig cfg;
  const double half_cell = cfg.range_resolution() / 2.0;
  RandomStream rng(99);
  double sq = 0.0;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = rng.uniform(-half_cell, half_cell);
    sq += e * e;
  }
  const double rmse = std::sqrt(sq / static_cast<double>(n));
  const QuantizationBounds b = quantization_bounds(cfg, 2048, 259);
  CHECK(rmse == doctest::Approx(std::sqrt(b.range_var)).epsilon(0.02));
}

TEST_CASE("average angle bound hits the closed-form values") {
  // Two antennas, one snapshot, unit powers: 36 / (12 pi^2) = 3 / pi^2.
  CHECK(crb_aoa_avg(1.0, 1.0, 2, 1) ==
        doctest::Approx(3.0 / (kPi * kPi)).epsilon(1e-14));

  // Default array: unit per-element powers, 16 elements, 256 snapshots.
  const OfdmConfig cfg;
  const double sig = std::pow(10.0, cfg.snr_phi_db / 10.0);
  CHECK(crb_aoa_avg(sig, 1.0, cfg.n_antennas, cfg.n_aoa_snapshots) ==
        doctest::Approx(1.236830855009006e-06).epsilon(1e-12));
}

TEST_CASE("average angle bound scales inversely with snapshots") {
  const double one = crb_aoa_avg(2.0, 0.5, 8, 64);
  const double two = crb_aoa_avg(2.0, 0.5, 8, 128);
  CHECK(two == doctest::Approx(one / 2.0).epsilon(1e-14));

  // More antennas can only help.
  CHECK(crb_aoa_avg(2.0, 0.5, 16, 64) < one);

  CHECK_THROWS_AS(crb_aoa_avg(1.0, 1.0, 1, 64), std::invalid_argument);
  CHECK_THROWS_AS(crb_aoa_avg(1.0, 1.0, 0, 64), std::invalid_argument);
  CHECK_THROWS_AS(crb_aoa_avg(1.0, 1.0, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(crb_aoa_avg(0.0, 1.0, 4, 64), std::invalid_argument);
  CHECK_THROWS_AS(crb_aoa_avg(1.0, -1.0, 4, 64), std::invalid_argument);
}

TEST_CASE("radial inbound motion yields a constant closing speed") {
  const OfdmConfig cfg;
  const double dt = cfg.frame_interval();
  const Trajectory traj =
      trajectory_from_motion({0.0, 100.0}, {0.0, -10.0}, dt, 92);
  REQUIRE(traj.truths.size() == 92);
  REQUIRE(traj.positions.size() == 93);
  for (std::size_t k = 0; k < traj.truths.size(); ++k) {
    const double want = 100.0 - static_cast<double>(k) * 10.0 * dt;
    CHECK(traj.truths[k].range_m == doctest::Approx(want).epsilon(1e-12));
    CHECK(traj.truths[k].radial_velocity_mps ==
          doctest::Approx(10.0).epsilon(1e-12));
    CHECK(traj.truths[k].aoa_rad == 0.0);
  }
}

TEST_CASE("tangential motion carries almost no closing speed") {
  const OfdmConfig cfg;
  const Trajectory traj = trajectory_from_motion({0.0, 100.0}, {10.0, 0.0},
                                                 cfg.frame_interval(), 10);
  // The forward difference sees speed^2 dt / (2 r) of geometric curvature.
  CHECK(std::abs(traj.truths[0].radial_velocity_mps) < 2e-2);
  CHECK(traj.truths[0].range_m == doctest::Approx(100.0));
  // Cross-range offsets to the right are positive angles.
  const Trajectory right =
      trajectory_from_motion({50.0, 86.602540378443865}, {0.0, 0.0},
                             cfg.frame_interval(), 1);
  CHECK(right.truths[0].aoa_rad == doctest::Approx(30.0 * kDeg).epsilon(1e-12));
}

TEST_CASE("advancing the range by the closing speed lands on the next step") {
  const OfdmConfig cfg;
  const double dt = cfg.frame_interval();
  RandomStream rng(7);
  const ScenarioParams params;
  const Trajectory traj = generate_trajectory(params, dt, rng);
  REQUIRE(traj.truths.size() == params.steps);
  for (std::size_t k = 0; k + 1 < traj.truths.size(); ++k) {
    const double advanced =
        traj.truths[k].range_m - dt * traj.truths[k].radial_velocity_mps;
    CHECK(advanced ==
          doctest::Approx(traj.truths[k + 1].range_m).epsilon(1e-9));
  }
}

TEST_CASE("random trajectories respect the keep window at every step") {
  const ScenarioParams params;
  const OfdmConfig cfg;
  const double dt = cfg.frame_interval();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(seed);
    const Trajectory traj = generate_trajectory(params, dt, rng);
    REQUIRE(traj.truths.size() == params.steps);
    CHECK(traj.truths[0].range_m >= params.init_range_min);
    CHECK(traj.truths[0].range_m <= params.init_range_max);
    CHECK(std::abs(traj.truths[0].aoa_rad) <=
          params.init_aoa_max_deg * kDeg + 1e-12);
    for (const TargetTruth& t : traj.truths) {
      CHECK(t.range_m >= params.keep_range_min);
      CHECK(t.range_m <= params.keep_range_max);
      CHECK(std::abs(t.aoa_rad) <= params.keep_aoa_max_deg * kDeg + 1e-12);
    }
  }
}

TEST_CASE("trajectory generation is reproducible per seed") {
  const ScenarioParams params;
  const OfdmConfig cfg;
  RandomStream a(42), b(42), c(43);
  const Trajectory ta = generate_trajectory(params, cfg.frame_interval(), a);
  const Trajectory tb = generate_trajectory(params, cfg.frame_interval(), b);
  const Trajectory tc = generate_trajectory(params, cfg.frame_interval(), c);
  REQUIRE(ta.truths.size() == tb.truths.size());
  for (std::size_t k = 0; k < ta.truths.size(); ++k) {
    CHECK(ta.truths[k].range_m == tb.truths[k].range_m);
    CHECK(ta.truths[k].radial_velocity_mps ==
          tb.truths[k].radial_velocity_mps);
    CHECK(ta.truths[k].aoa_rad == tb.truths[k].aoa_rad);
  }
  CHECK(ta.truths[0].range_m != tc.truths[0].range_m);
}

TEST_CASE("an impossible keep window exhausts the attempt budget") {
  ScenarioParams params;
  params.keep_range_min = 5.0;
  params.keep_range_max = 20.0;  // below every initial range draw
  params.max_attempts = 50;
  const OfdmConfig cfg;
  RandomStream rng(1);
  CHECK_THROWS_AS(generate_trajectory(params, cfg.frame_interval(), rng),
                  InfeasibleError);
}

TEST_CASE("scenario parameters are validated") {
  const OfdmConfig cfg;
  RandomStream rng(1);
  ScenarioParams p;

  p.steps = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ScenarioParams{};
  p.init_range_max = p.init_range_min - 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ScenarioParams{};
  p.speed_min = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ScenarioParams{};
  p.keep_range_max = p.keep_range_min;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ScenarioParams{};
  p.keep_aoa_max_deg = 95.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ScenarioParams{};
  p.max_attempts = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ScenarioParams{};
  CHECK_THROWS_AS(generate_trajectory(p, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(trajectory_from_motion({0.0, 50.0}, {0.0, 0.0},
                                         cfg.frame_interval(), 0),
                  std::invalid_argument);
}

TEST_CASE("polar distance helper measures straight-line separation") {
  CHECK(position_distance(100.0, 0.2, 100.0, 0.2) == 0.0);
  // Same bearing: the distance is the range gap.
  CHECK(position_distance(103.0, 0.2, 100.0, 0.2) ==
        doctest::Approx(3.0).epsilon(1e-12));
  // Ninety degrees apart at equal range: sqrt(2) times the range.
  CHECK(position_distance(10.0, 0.0, 10.0, kPi / 2.0) ==
        doctest::Approx(10.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("perfect tracks aggregate to zero error") {
  const std::vector<TrackErrors> tracks = {constant_track(3, 0, 0, 0, 0),
                                           constant_track(3, 0, 0, 0, 0)};
  const std::vector<StepMetrics> curve = aggregate_metrics(tracks, 3);
  REQUIRE(curve.size() == 3);
  for (const StepMetrics& m : curve) {
    CHECK(m.range_rmse == 0.0);
    CHECK(m.velocity_rmse == 0.0);
    CHECK(m.aoa_rmse == 0.0);
    CHECK(m.position_err == 0.0);
  }
  const SummaryMetrics s = summarize_metrics(tracks, 3);
  CHECK(s.range_rmse == 0.0);
  CHECK(s.position_err == 0.0);
}

TEST_CASE("a single record passes through unchanged") {
  const std::vector<TrackErrors> tracks = {constant_track(1, 3, 0, 0, 3)};
  const std::vector<StepMetrics> curve = aggregate_metrics(tracks, 1);
  CHECK(curve[0].range_rmse == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(curve[0].aoa_rmse == 0.0);
  CHECK(curve[0].position_err == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("errors one and seven average to an RMSE of five") {
  const std::vector<TrackErrors> tracks = {constant_track(1, 1, 1, 1, 1),
                                           constant_track(1, 7, 7, 7, 7)};
  const std::vector<StepMetrics> curve = aggregate_metrics(tracks, 1);
  CHECK(curve[0].range_rmse == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(curve[0].velocity_rmse == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(curve[0].aoa_rmse == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(curve[0].position_err == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("summary equals the RMS of the per-step curve") {
  RandomStream rng(11);
  std::vector<TrackErrors> tracks;
  const std::size_t steps = 7;
  for (int i = 0; i < 5; ++i) {
    TrackErrors t;
    for (std::size_t s = 0; s < steps; ++s) {
      t.range_err.push_back(rng.uniform(-2.0, 2.0));
      t.velocity_err.push_back(rng.uniform(-2.0, 2.0));
      t.aoa_err.push_back(rng.uniform(-0.5, 0.5));
      t.position_err.push_back(std::abs(rng.uniform(0.0, 3.0)));
    }
    tracks.push_back(std::move(t));
  }
  const std::vector<StepMetrics> curve = aggregate_metrics(tracks, steps);
  const SummaryMetrics sum = summarize_metrics(tracks, steps);
  double sq_r = 0.0, sq_v = 0.0, sq_a = 0.0, mean_p = 0.0;
  for (const StepMetrics& m : curve) {
    sq_r += m.range_rmse * m.range_rmse;
    sq_v += m.velocity_rmse * m.velocity_rmse;
    sq_a += m.aoa_rmse * m.aoa_rmse;
    mean_p += m.position_err;
  }
  const double inv = 1.0 / static_cast<double>(steps);
  CHECK(sum.range_rmse == doctest::Approx(std::sqrt(sq_r * inv)).epsilon(1e-9));
  CHECK(sum.velocity_rmse ==
        doctest::Approx(std::sqrt(sq_v * inv)).epsilon(1e-9));
  CHECK(sum.aoa_rmse == doctest::Approx(std::sqrt(sq_a * inv)).epsilon(1e-9));
  CHECK(sum.position_err == doctest::Approx(mean_p * inv).epsilon(1e-9));
}

TEST_CASE("metric aggregation rejects malformed records") {
  std::vector<TrackErrors> tracks = {constant_track(3, 1, 1, 1, 1)};
  CHECK_THROWS_AS(aggregate_metrics(tracks, 4), std::invalid_argument);
  CHECK_THROWS_AS(aggregate_metrics({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(summarize_metrics(tracks, 0), std::invalid_argument);
  tracks[0].aoa_err.pop_back();
  CHECK_THROWS_AS(aggregate_metrics(tracks, 3), std::invalid_argument);
}

TEST_CASE("operation counts match the closed-form budget") {
  const OfdmConfig cfg;
  const ComplexityTable t = complexity_table(cfg, 16);
  CHECK(t.rdm == 50435618U);
  CHECK(t.kalman == 50435668U);
  CHECK(t.ebm == 50435621U);
  CHECK(t.zp == 657780258U);
  CHECK(t.czt == 976039458U);
  CHECK(t.kalman_czt == 976039508U);

  CHECK(t.ebm - t.rdm == 3U);
  CHECK(t.kalman - t.rdm == 50U);
  CHECK(t.kalman_czt - t.czt == 50U);

  const double gap =
      static_cast<double>(t.czt - t.zp) / static_cast<double>(t.czt);
  CHECK(gap < 0.35);
  CHECK(gap > 0.30);
}

TEST_CASE("unpadded interpolation costs the same as the plain map") {
  const OfdmConfig cfg;
  const ComplexityTable t = complexity_table(cfg, 1);
  CHECK(t.zp == t.rdm);
  CHECK_THROWS_AS(complexity_table(cfg, 0), std::invalid_argument);
}
