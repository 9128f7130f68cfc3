#include "handeye/problem.hpp"

#include <stdexcept>

namespace handeye {

const ConstraintPair& dq_constraints() {
  static const ConstraintPair c = [] {
    ConstraintPair p;
    p.p_r.setZero();
    p.p_r.block<4, 4>(0, 0) = -Mat4::Identity();
    p.p_d.setZero();
    p.p_d.block<4, 4>(0, 4) = Mat4::Identity();
    p.p_d.block<4, 4>(4, 0) = Mat4::Identity();
    return p;
  }();
  return c;
}

Mat8 sample_matrix(const MotionPair& pair) {
  return matrix_reps(pair.a).plus - matrix_reps(pair.b).minus;
}

CostMatrix build_cost(const std::vector<MotionPair>& pairs) {
  if (pairs.empty())
    throw std::invalid_argument("build_cost: empty pair list");
  Mat8 sum = Mat8::Zero();
  Mat8 comp = Mat8::Zero();  // Kahan compensation per entry
  for (const MotionPair& p : pairs) {
    if (!(p.weight >= 0.0) || !std::isfinite(p.weight))
      throw std::invalid_argument("build_cost: weight must be finite and >= 0");
    Mat8 m = sample_matrix(p);
    Mat8 term = p.weight * (m.transpose() * m);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        double y = term(i, j) - comp(i, j);
        double t = sum(i, j) + y;
        comp(i, j) = (t - sum(i, j)) - y;
        sum(i, j) = t;
      }
    }
  }
  // symmetrize away the last few ulps of accumulation noise
  CostMatrix q;
  q.q = 0.5 * (sum + sum.transpose());
  return q;
}

double cost_value(const CostMatrix& q, const Vec8& x) {
  return x.dot(q.q * x);
}

Eigen::Vector2d constraint_residuals(const Vec8& x) {
  const ConstraintPair& c = dq_constraints();
  return Eigen::Vector2d(1.0 + x.dot(c.p_r * x), x.dot(c.p_d * x));
}

}  // namespace handeye
