#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "handeye/metrics.hpp"
#include "handeye/solver.hpp"
#include "handeye/synth.hpp"
#include "test_util.hpp"

using namespace handeye;
using namespace handeye::test;

namespace {

ScenarioConfig base_config(std::uint64_t seed = 0) {
  ScenarioConfig cfg;
  cfg.n_uneven = 300;
  cfg.n_even = 100;
  cfg.calibration =
      dq_from_pose(Vec3(0.2, -0.4, 0.1), 0.9, Vec3(1, -1, 2).normalized());
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("same seed is bit-identical, different seeds differ") {
  ScenarioConfig cfg = base_config(17);
  cfg.sigma_r = 0.01;
  cfg.sigma_t = 0.05;
  Dataset a = generate(cfg);
  Dataset b = generate(cfg);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK((a.pairs[i].a.vec() - b.pairs[i].a.vec()).norm() == 0.0);
    CHECK((a.pairs[i].b.vec() - b.pairs[i].b.vec()).norm() == 0.0);
  }
  cfg.seed = 18;
  Dataset c = generate(cfg);
  double diff = 0.0;
  for (size_t i = 0; i < a.pairs.size(); ++i)
    diff += (a.pairs[i].a.vec() - c.pairs[i].a.vec()).norm();
  CHECK(diff > 0.0);
}

TEST_CASE("generated samples are unit dual quaternions") {
  ScenarioConfig cfg = base_config(19);
  cfg.sigma_r = 0.05;
  cfg.sigma_t = 0.5;
  Dataset ds = generate(cfg);
  CHECK(ds.pairs.size() == static_cast<size_t>(cfg.n_uneven + cfg.n_even));
  for (const MotionPair& p : ds.pairs) {
    CHECK(p.a.is_unit(1e-8));
    CHECK(p.b.is_unit(1e-8));
    CHECK(p.weight == 1.0);
  }
}

TEST_CASE("planar portion rotates about z only") {
  Dataset ds = generate(base_config(20));
  for (int i = 0; i < ds.config.n_uneven; ++i) {
    const DualQuat& m = ds.pairs[i].a;
    if (rotation_angle(m) < 1e-8) continue;
    Vec3 axis = rotation_axis(m);
    CHECK(std::abs(std::abs(axis.z()) - 1.0) < 1e-9);
  }
  // the planar walk must actually turn
  int rotating = 0;
  for (int i = 0; i < ds.config.n_uneven; ++i)
    if (rotation_angle(ds.pairs[i].a) > 1e-4) ++rotating;
  CHECK(rotating > ds.config.n_uneven / 2);
}

TEST_CASE("even portion spreads rotation axes off the z axis") {
  Dataset ds = generate(base_config(21));
  int off_z = 0;
  for (size_t i = ds.config.n_uneven; i < ds.pairs.size(); ++i) {
    const DualQuat& m = ds.pairs[i].a;
    if (rotation_angle(m) < 1e-6) continue;
    if (std::abs(rotation_axis(m).z()) < 0.9) ++off_z;
  }
  CHECK(off_z > ds.config.n_even / 4);
}

TEST_CASE("noiseless pairs satisfy the hand-eye relation exactly") {
  Dataset ds = generate(base_config(22));
  const DualQuat& t = ds.ground_truth;
  for (const MotionPair& p : ds.pairs) {
    Vec8 lhs = vec_canonical(dq_mul(p.a, t).vec());
    Vec8 rhs = vec_canonical(dq_mul(t, p.b).vec());
    CHECK((lhs - rhs).norm() < 1e-9);
  }
}

TEST_CASE("identity calibration makes both sensors agree") {
  ScenarioConfig cfg = base_config(23);
  cfg.calibration = DualQuat::identity();
  Dataset ds = generate(cfg);
  for (const MotionPair& p : ds.pairs)
    CHECK((vec_canonical(p.a.vec()) - vec_canonical(p.b.vec())).norm() < 1e-10);
}

TEST_CASE("solver recovers the calibration from noiseless data") {
  Dataset ds = generate(base_config(24));
  CalibrationResult r = solve(build_cost(ds.pairs));
  ErrorPair err = calib_error(r.x, ds.ground_truth);
  CHECK(err.eps_r_deg < 1e-6);
  CHECK(err.eps_t_m < 1e-7);
}

TEST_CASE("add_noise") {
  std::mt19937_64 rng(25);
  DualQuat motion = dq_from_pose(Vec3(1, 0, 0), 0.02, Vec3(0, 0, 1));
  DualQuat same = add_noise(motion, 0.0, 0.0, rng);
  CHECK((same.vec() - motion.vec()).norm() == 0.0);

  // zero-length motion: noise scales with translation, so none is added
  DualQuat still = dq_from_rotation(0.3, Vec3(0, 1, 0));
  DualQuat still_noisy = add_noise(still, 0.1, 5.0, rng);
  CHECK((still_noisy.vec() - still.vec()).norm() < 1e-12);

  const double sigma_r = 0.1;  // deg per m
  const double sigma_t = 5.0;  // percent
  const int n = 4000;
  double sum_abs_angle = 0.0;
  double sum_t2 = 0.0;
  for (int i = 0; i < n; ++i) {
    DualQuat noisy = add_noise(motion, sigma_r, sigma_t, rng);
    DualQuat noise = dq_mul(noisy, dq_inverse(motion));
    sum_abs_angle += rotation_angle(noise) * 180.0 / M_PI;
    sum_t2 += noise.translation().squaredNorm();
  }
  // |angle| is half-normal with scale sigma_r * len (len = 1 m)
  double expected_abs = sigma_r * std::sqrt(2.0 / M_PI);
  CHECK(sum_abs_angle / n == doctest::Approx(expected_abs).epsilon(0.1));
  // translation perturbation RMS norm is sigma_t% of len
  double rms_t = std::sqrt(sum_t2 / n);
  CHECK(rms_t == doctest::Approx(sigma_t / 100.0).epsilon(0.1));
}

TEST_CASE("invalid configurations throw") {
  ScenarioConfig cfg = base_config();
  cfg.n_uneven = 0;
  cfg.n_even = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.n_uneven = -1;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.wavelength = 0.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.step_translation = -1.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.sigma_r = -0.1;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);

  cfg = base_config();
  cfg.calibration.real = Quaternion(2.0, Vec3::Zero());
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}
