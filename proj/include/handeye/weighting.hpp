#pragma once

#include <vector>

#include "handeye/sensitivity.hpp"
#include "handeye/solver.hpp"

namespace handeye {

enum class DensitySource { sensor_a, sensor_b };

struct RotationSample {
  MotionPair pair;
  Vec3 axis;     // unit rotation axis of the chosen sensor's motion
  double angle;  // rotation angle in [0, pi]
};

struct RotationSplit {
  std::vector<MotionPair> no_rotation;
  std::vector<RotationSample> rotation;
  double threshold;  // radians
};

struct DensityResult {
  std::vector<double> densities;    // rho_i >= 1
  std::vector<double> weights_rho;  // 1 / sqrt(rho_i)
  double sigma_rho{0.0};            // sum of weights_rho
  double d_r{0.2};
};

inline constexpr double kDefaultRotationThreshold = 0.1 * M_PI / 180.0;

RotationSplit split_by_rotation(const std::vector<MotionPair>& pairs,
                                DensitySource source = DensitySource::sensor_a,
                                double threshold = kDefaultRotationThreshold);

// pi/2 - |arccos(n_i . n_j) - pi/2|; antipodal axes have distance 0.
double axis_distance(const Vec3& n_i, const Vec3& n_j);

// Unnormalized Gaussian kernel exp(-x^2 / (2 d_r^2)).
double kernel(double x, double d_r);

DensityResult densities(const RotationSplit& split, double d_r = 0.2);

// Streaming density computation; adding axes one at a time matches the
// batch result exactly.
class DensityAccumulator {
 public:
  explicit DensityAccumulator(double d_r = 0.2);
  void add(const Vec3& axis);
  const std::vector<double>& densities() const { return rho_; }
  DensityResult result() const;

 private:
  double d_r_;
  std::vector<Vec3> axes_;
  std::vector<double> rho_;
};

// Q_w with w^(nr) = 1 and w^(r)_i = n^(r) w_rho_i / sigma_rho; the rotation
// weights sum to n^(r).
CostMatrix weighted_cost(const RotationSplit& split, const DensityResult& dens);

std::vector<MotionPair> reweighted_pairs(const RotationSplit& split,
                                         const DensityResult& dens);

// Sigmoid blend factor between the unweighted and weighted cost matrices.
double blend_gamma(double c_t, double c_gamma = 15.0, double s_gamma = 0.2);

CostMatrix combined_cost(const CostMatrix& q, const CostMatrix& q_w,
                         double gamma);

struct WeightingParams {
  double threshold{kDefaultRotationThreshold};
  double d_r{0.2};
  double c_gamma{15.0};
  double s_gamma{0.2};
  DensitySource source{DensitySource::sensor_a};
  double delta_t{0.1};
  double delta_r{0.1 * M_PI / 180.0};
  SolverOptions solver{};
};

struct PipelineResult {
  CalibrationResult unweighted;
  CalibrationResult final;
  SensitivityReport sensitivity;
  DensityResult density;
  double gamma{0.0};
};

// Full pipeline: unweighted solve -> sensitivity (c_t) -> densities -> Q_w
// -> gamma -> Q_gamma -> final solve.
PipelineResult auto_weighted_calibrate(const std::vector<MotionPair>& pairs,
                                       const WeightingParams& params = {});

}  // namespace handeye
