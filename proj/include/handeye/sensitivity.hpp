#pragma once

#include <array>
#include <string>

#include "handeye/problem.hpp"

namespace handeye {

enum class DeviationKind { translation, rotation };

struct SensitivityReport {
  Mat3 s_t;  // quadratic model of Delta J for translational deviations
  Mat3 s_r;  // likewise for rotational deviations (axis-angle)
  // eigenpairs sorted by |lambda| ascending
  Vec3 eig_t_values;
  Mat3 eig_t_vectors;  // columns
  Vec3 eig_r_values;
  Mat3 eig_r_vectors;
  double c_t{1.0};  // |lambda_t3 / lambda_t1|
  double c_r{1.0};
  // v_t1, the least-constrained translation direction, expressed in the
  // sensor-a frame (deviations themselves compose on the sensor-b side).
  Vec3 dominant_axis;
  bool dominant_tie{false};
  double delta_t{0.1};
  double delta_r{0.1 * M_PI / 180.0};
};

// The six probe directions: canonical axes and normalized two-axis diagonals.
std::array<Vec3, 6> probe_deviations();

// J(x_hat * T(delta p)) - J(x_hat), with the perturbation applied on the
// right of x_hat.
double cost_deviation(const CostMatrix& q, const DualQuat& x_hat,
                      DeviationKind kind, const Vec3& p, double delta);

SensitivityReport estimate_sensitivity(const CostMatrix& q,
                                       const DualQuat& x_hat,
                                       double delta_t = 0.1,
                                       double delta_r = 0.1 * M_PI / 180.0);

enum class AdviceCode { well_conditioned, borderline, add_orthogonal_rotations };

struct FeedbackRecord {
  double c_t;
  double c_r;
  Vec3 dominant_axis;
  bool dominant_tie;
  AdviceCode advice;
  std::string text;
};

FeedbackRecord feedback_summary(const SensitivityReport& report,
                                double c_gamma = 15.0);

const char* advice_code_name(AdviceCode code);

}  // namespace handeye
