#pragma once

#include <vector>

#include "handeye/dq.hpp"

namespace handeye {

// One synchronized relative-motion sample of the two sensors.
struct MotionPair {
  DualQuat a;
  DualQuat b;
  double weight{1.0};
};

// 8x8 symmetric PSD cost matrix of the quadratic cost J(x) = x^T Q x.
struct CostMatrix {
  Mat8 q{Mat8::Zero()};
};

// Constant constraint matrices of the unit-DQ conditions
//   1 + x^T P_r x = 0,  x^T P_d x = 0.
struct ConstraintPair {
  Mat8 p_r;
  Mat8 p_d;
};

const ConstraintPair& dq_constraints();

// M = plus(a) - minus(b); M vec(q_T) = 0 for a noiseless pair.
Mat8 sample_matrix(const MotionPair& pair);

// Q = sum_i w_i M_i^T M_i accumulated in input order with compensated
// summation per entry.
CostMatrix build_cost(const std::vector<MotionPair>& pairs);

double cost_value(const CostMatrix& q, const Vec8& x);

// (1 + x^T P_r x, x^T P_d x); both zero iff x is a unit DQ vector.
Eigen::Vector2d constraint_residuals(const Vec8& x);

}  // namespace handeye
