#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "handeye/problem.hpp"

namespace handeye {

struct ScenarioConfig {
  int n_uneven{1000};       // planar samples, rotation about z only
  int n_even{100};          // samples with spread rotation axes
  double amplitude{0.42};   // sine elevation amplitude [m]
  double wavelength{30.0};  // sine elevation wavelength [m]
  double step_translation{1.0};  // per-sample travel [m]
  double sigma_r{0.0};      // rotation noise [deg per m of translation]
  double sigma_t{0.0};      // translation noise [% of translation]
  DualQuat calibration{};   // ground-truth T
  std::uint64_t seed{0};
};

struct Dataset {
  std::vector<MotionPair> pairs;
  DualQuat ground_truth;
  ScenarioConfig config;
};

Dataset generate(const ScenarioConfig& config);

// World-side multiplicative noise, scaled by the motion's translation norm.
DualQuat add_noise(const DualQuat& motion, double sigma_r_deg_per_m,
                   double sigma_t_percent, std::mt19937_64& rng);

}  // namespace handeye
