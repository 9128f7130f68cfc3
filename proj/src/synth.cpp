#include "handeye/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace handeye {

namespace {

// Ornstein-Uhlenbeck yaw rate, clipped to a vehicle-plausible per-step turn.
struct YawRate {
  double theta{0.1};
  double sigma{0.03};
  double clip{0.05};  // rad per step, ~30 deg/s equivalent
  double value{0.0};

  double step(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    value += theta * (0.0 - value) + sigma * n(rng);
    value = std::clamp(value, -clip, clip);
    return value;
  }
};

DualQuat rotation_zyx(double yaw, double pitch, double roll) {
  DualQuat rz = dq_from_rotation(yaw, Vec3(0, 0, 1));
  DualQuat ry = dq_from_rotation(pitch, Vec3(0, 1, 0));
  DualQuat rx = dq_from_rotation(roll, Vec3(1, 0, 0));
  return dq_mul(dq_mul(rz, ry), rx);
}

DualQuat pose(const Vec3& position, const DualQuat& orientation) {
  return dq_mul(dq_from_translation(position), orientation);
}

// Relative motions of consecutive poses along a planar random-walk
// trajectory; all rotation axes are exactly +-z.
std::vector<DualQuat> planar_motions(int n, double step,
                                     std::mt19937_64& rng) {
  std::vector<DualQuat> motions;
  motions.reserve(n);
  YawRate yaw_rate;
  double yaw = 0.0;
  Vec3 p = Vec3::Zero();
  DualQuat prev = pose(p, rotation_zyx(yaw, 0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    yaw += yaw_rate.step(rng);
    p += step * Vec3(std::cos(yaw), std::sin(yaw), 0.0);
    DualQuat cur = pose(p, rotation_zyx(yaw, 0.0, 0.0));
    motions.push_back(dq_mul(dq_inverse(prev), cur));
    prev = cur;
  }
  return motions;
}

// Trajectory over the sine elevation profile: a steady turn while pitch
// follows the slope and a matched roll profile is added.
std::vector<DualQuat> elevated_motions(int n, double step, double amplitude,
                                       double wavelength) {
  std::vector<DualQuat> motions;
  motions.reserve(n);
  const double yaw_step = 0.03;  // rad per step, constant turn
  // Roll is the quadrature pair of the slope-following pitch (same wavelength,
  // 90 degrees out of phase, matched rate amplitude), so the pitch/roll rate
  // vector has constant magnitude and the per-step rotation axes sweep a cone
  // around z rather than scattering into isolated directions.
  const double roll_amp = amplitude * 2.0 * M_PI / wavelength;
  double yaw = 0.0;
  double s = 0.0;
  Vec3 p = Vec3::Zero();

  auto attitude = [&](double arc, double psi) {
    double theta = 2.0 * M_PI * arc / wavelength;
    double slope = amplitude * 2.0 * M_PI / wavelength * std::cos(theta);
    double pitch = -std::atan(slope);
    double roll = roll_amp * std::sin(theta);
    return rotation_zyx(psi, pitch, roll);
  };

  // The even portion is a tight, slow calibration maneuver: the angular
  // excitation per sample matches the profile, but the travel per sample is
  // short, so the per-meter measurement noise affects it less.
  const double kManeuverSpeed = 0.3;
  DualQuat prev_r = attitude(s, yaw);
  DualQuat prev = pose(p, prev_r);
  for (int i = 0; i < n; ++i) {
    yaw += yaw_step;
    s += step;
    DualQuat r = attitude(s, yaw);
    // advance along the body forward axis
    DualQuat fwd = dq_mul(
        dq_mul(r, dq_from_translation(Vec3(kManeuverSpeed * step, 0, 0))),
        dq_inverse(r));
    p += fwd.translation();
    DualQuat cur = pose(p, r);
    motions.push_back(dq_mul(dq_inverse(prev), cur));
    prev = cur;
  }
  return motions;
}

}  // namespace

DualQuat add_noise(const DualQuat& motion, double sigma_r_deg_per_m,
                   double sigma_t_percent, std::mt19937_64& rng) {
  if (sigma_r_deg_per_m == 0.0 && sigma_t_percent == 0.0) return motion;
  double len = motion.translation().norm();

  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // uniformly random axis
  double z = 2.0 * unit(rng) - 1.0;
  double az = 2.0 * M_PI * unit(rng);
  double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
  Vec3 axis(rxy * std::cos(az), rxy * std::sin(az), z);

  double angle = sigma_r_deg_per_m * len * M_PI / 180.0 * n(rng);
  double t_std = sigma_t_percent / 100.0 * len / std::sqrt(3.0);
  Vec3 dt(t_std * n(rng), t_std * n(rng), t_std * n(rng));

  DualQuat noise = dq_mul(dq_from_translation(dt), dq_from_rotation(angle, axis));
  return dq_mul(noise, motion);
}

Dataset generate(const ScenarioConfig& config) {
  if (config.n_uneven < 0 || config.n_even < 0 ||
      config.n_uneven + config.n_even < 1)
    throw std::invalid_argument("generate: sample counts invalid");
  if (config.amplitude < 0.0)
    throw std::invalid_argument("generate: amplitude must be >= 0");
  if (!(config.wavelength > 0.0))
    throw std::invalid_argument("generate: wavelength must be > 0");
  if (!(config.step_translation > 0.0))
    throw std::invalid_argument("generate: step translation must be > 0");
  if (config.sigma_r < 0.0 || config.sigma_t < 0.0)
    throw std::invalid_argument("generate: noise sigmas must be >= 0");
  if (!config.calibration.is_unit(kUnitTolFile))
    throw std::invalid_argument("generate: calibration is not a unit DQ");

  std::mt19937_64 rng(config.seed);
  std::vector<DualQuat> motions =
      planar_motions(config.n_uneven, config.step_translation, rng);
  std::vector<DualQuat> even = elevated_motions(
      config.n_even, config.step_translation, config.amplitude,
      config.wavelength);
  motions.insert(motions.end(), even.begin(), even.end());

  const DualQuat& t = config.calibration;
  DualQuat t_inv = dq_inverse(t);

  Dataset ds;
  ds.ground_truth = t;
  ds.config = config;
  ds.pairs.reserve(motions.size());
  for (const DualQuat& va : motions) {
    DualQuat vb = dq_normalize(dq_mul(dq_mul(t_inv, va), t));
    MotionPair pair;
    pair.a = add_noise(va, config.sigma_r, config.sigma_t, rng);
    pair.b = add_noise(vb, config.sigma_r, config.sigma_t, rng);
    pair.weight = 1.0;
    ds.pairs.push_back(pair);
  }
  return ds;
}

}  // namespace handeye
