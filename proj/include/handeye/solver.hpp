#pragma once

#include <stdexcept>

#include "handeye/problem.hpp"

namespace handeye {

// Fewer than two independent rotation axes in the data.
struct UnderConstrainedError : std::runtime_error {
  UnderConstrainedError()
      : std::runtime_error(
            "under-constrained calibration data: at least two motions with "
            "non-parallel rotation axes are required") {}
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double gap_tol{1e-8};   // relative duality-gap tolerance
  double rank_tol{1e-7};  // eigenvalues below rank_tol * lambda_max count as null
  int max_iter{200};      // outer bisection iterations
};

struct CalibrationResult {
  DualQuat x;          // estimated calibration q_T
  double cost{0.0};    // J(x)
  double dual_value{0.0};
  double gap{0.0};     // cost - dual_value
  double mu{0.0};
  double nu{0.0};
};

// Solve min x^T Q x s.t. the unit-DQ constraints, via the two-multiplier
// Lagrangian dual max mu s.t. Q + mu P_r + nu P_d >= 0.
CalibrationResult solve(const CostMatrix& q, const SolverOptions& opts = {});

struct EigenInit {
  double mu0;
  double nu0;
  Vec8 x0;
};

// Feasible starting point from the two smallest eigenvectors of Q.
EigenInit eigen_init(const CostMatrix& q,
                     const SolverOptions& opts = {});

bool certify(const CostMatrix& q, const CalibrationResult& result, double tol);

}  // namespace handeye
