#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "handeye/sensitivity.hpp"
#include "handeye/solver.hpp"
#include "handeye/synth.hpp"
#include "handeye/vq.hpp"
#include "test_util.hpp"

using namespace handeye;
using namespace handeye::test;

namespace {

RotationSplit split_of_axes(const std::vector<Vec3>& axes) {
  std::vector<MotionPair> pairs;
  for (const Vec3& n : axes) {
    MotionPair p;
    p.a = dq_from_rotation(0.05, n);
    p.b = p.a;
    pairs.push_back(p);
  }
  return split_by_rotation(pairs);
}

}  // namespace

TEST_CASE("canonicalize_axis") {
  CHECK((canonicalize_axis(Vec3(0, 0, -1)) - Vec3(0, 0, 1)).norm() == 0.0);
  CHECK((canonicalize_axis(Vec3(0.3, -0.4, 0.5)) - Vec3(0.3, -0.4, 0.5)).norm() ==
        0.0);
  CHECK((canonicalize_axis(Vec3(0.5, -0.5, 0)) - Vec3(-0.5, 0.5, 0)).norm() ==
        0.0);
  CHECK((canonicalize_axis(Vec3(-1, 0, 0)) - Vec3(1, 0, 0)).norm() == 0.0);
  std::mt19937_64 rng(60);
  for (int it = 0; it < 500; ++it) {
    Vec3 n = random_unit_vec(rng);
    Vec3 c = canonicalize_axis(n);
    CHECK((canonicalize_axis(-n) - c).norm() < 1e-15);
    // acos loses half the significant digits near +-1
    CHECK(axis_distance(c, n) < 1e-7);
  }
}

TEST_CASE("codebook on two orthogonal clusters") {
  std::mt19937_64 rng(61);
  std::vector<Vec3> axes;
  std::normal_distribution<double> g(0.0, 0.02);
  for (int i = 0; i < 40; ++i) {
    Vec3 base = (i % 2 == 0) ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
    axes.push_back((base + Vec3(g(rng), g(rng), g(rng))).normalized());
  }
  Codebook cb = vq_codebook(axes, 2.0 / 40.0, 1);
  REQUIRE(cb.k == 2);
  double dz = std::min(axis_distance(cb.centroids[0], Vec3(0, 0, 1)),
                       axis_distance(cb.centroids[1], Vec3(0, 0, 1)));
  double dx = std::min(axis_distance(cb.centroids[0], Vec3(1, 0, 0)),
                       axis_distance(cb.centroids[1], Vec3(1, 0, 0)));
  CHECK(dz < 0.05);
  CHECK(dx < 0.05);
  for (const Vec3& c : cb.centroids) {
    CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((canonicalize_axis(c) - c).norm() < 1e-15);
  }
}

TEST_CASE("k_rel = 1 keeps every sample") {
  std::mt19937_64 rng(62);
  std::vector<Vec3> axes;
  for (int i = 0; i < 30; ++i) axes.push_back(random_unit_vec(rng));
  RotationSplit s = split_of_axes(axes);
  std::vector<MotionPair> sel = vq_select(s, 1.0, 2);
  CHECK(sel.size() == axes.size());
}

TEST_CASE("selection size and distinctness") {
  Dataset ds = generate([] {
    ScenarioConfig cfg;
    cfg.n_uneven = 400;
    cfg.n_even = 100;
    cfg.sigma_r = 0.01;
    cfg.sigma_t = 0.05;
    cfg.seed = 63;
    return cfg;
  }());
  RotationSplit s = split_by_rotation(ds.pairs);
  double k_rel = 0.2;
  std::vector<MotionPair> sel = vq_select(s, k_rel, 3);
  int k = static_cast<int>(
      std::lround(k_rel * static_cast<double>(s.rotation.size())));
  CHECK(sel.size() == s.no_rotation.size() + static_cast<size_t>(k));

  // selected rotation samples are distinct dataset entries
  std::set<std::array<double, 8>> seen;
  for (size_t i = s.no_rotation.size(); i < sel.size(); ++i) {
    std::array<double, 8> key;
    Vec8 v = sel[i].a.vec();
    for (int j = 0; j < 8; ++j) key[j] = v(j);
    CHECK(seen.insert(key).second);
  }
}

TEST_CASE("same seed reproduces the selection, invalid inputs throw") {
  std::mt19937_64 rng(64);
  std::vector<Vec3> axes;
  for (int i = 0; i < 100; ++i) axes.push_back(random_unit_vec(rng));
  RotationSplit s = split_of_axes(axes);
  std::vector<MotionPair> a = vq_select(s, 0.2, 5);
  std::vector<MotionPair> b = vq_select(s, 0.2, 5);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK((a[i].a.vec() - b[i].a.vec()).norm() == 0.0);

  CHECK_THROWS_AS(vq_codebook({}, 0.2, 0), std::invalid_argument);
  CHECK_THROWS_AS(vq_codebook(axes, 0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(vq_codebook(axes, 1.5, 0), std::invalid_argument);
}

TEST_CASE("vq subset improves conditioning on planar-dominant data") {
  Dataset ds = generate([] {
    ScenarioConfig cfg;
    cfg.n_uneven = 2000;
    cfg.n_even = 100;
    cfg.sigma_r = 0.005;
    cfg.sigma_t = 0.025;
    cfg.seed = 65;
    return cfg;
  }());
  RotationSplit s = split_by_rotation(ds.pairs);
  CostMatrix q_full = build_cost(ds.pairs);
  CalibrationResult r_full = solve(q_full);
  double ct_full = estimate_sensitivity(q_full, r_full.x).c_t;

  CostMatrix q_vq = build_cost(vq_select(s, 0.2, 6));
  CalibrationResult r_vq = solve(q_vq);
  double ct_vq = estimate_sensitivity(q_vq, r_vq.x).c_t;
  CHECK(ct_vq < ct_full);
}
