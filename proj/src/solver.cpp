#include "handeye/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace handeye {

namespace {

Mat8 dual_matrix(const CostMatrix& q, double mu, double nu) {
  const ConstraintPair& c = dq_constraints();
  return q.q + mu * c.p_r + nu * c.p_d;
}

double lambda_min(const Mat8& z) {
  Eigen::SelfAdjointEigenSolver<Mat8> es(z, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// max over nu of lambda_min(Q + mu P_r + nu P_d); lambda_min is concave in
// nu, so golden-section on an expanding bracket.
struct InnerResult {
  double nu;
  double value;
};

InnerResult maximize_over_nu(const CostMatrix& q, double mu, double scale) {
  auto f = [&](double nu) { return lambda_min(dual_matrix(q, mu, nu)); };

  double b = scale + std::abs(mu) + 1.0;
  double lo = -b, hi = b;
  // P_d has eigenvalues +-1, so lambda_min decays like -|nu| outside the
  // bracket; expand until both ends are below the center value.
  double fc = f(0.0);
  while (f(lo) >= fc) lo *= 2.0;
  while (f(hi) >= fc) hi *= 2.0;

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  const double tol = 1e-13 * (scale + 1.0);
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  double nu = 0.5 * (lo + hi);
  return {nu, f(nu)};
}

// Feasible x = alpha u1 + beta u2 satisfying both unit-DQ constraints;
// returns the root with the lower cost.
std::optional<Vec8> combine_null_vectors(const Vec8& u1, const Vec8& u2,
                                         const CostMatrix& q) {
  const Mat8& pd = dq_constraints().p_d;
  auto quad = [&](const Vec8& x, const Vec8& y) { return x.dot(pd * y); };

  // If the P_d form vanishes identically on the null space, every
  // combination is feasible: a solution continuum (e.g. all rotation axes
  // parallel, translation along the axis free), not a discrete optimum.
  double span_scale = u1.squaredNorm() + u2.squaredNorm();
  if (std::abs(quad(u1, u1)) + std::abs(quad(u2, u2)) +
          2.0 * std::abs(quad(u1, u2)) <
      1e-10 * span_scale)
    return std::nullopt;

  std::vector<Vec8> candidates;
  auto add_roots = [&](const Vec8& a, const Vec8& b) {
    // x = a + t b, x^T P_d x = 0  ->  c2 t^2 + c1 t + c0 = 0
    double c2 = quad(b, b);
    double c1 = 2.0 * quad(a, b);
    double c0 = quad(a, a);
    double s = std::abs(c2) + std::abs(c1) + std::abs(c0);
    if (s < 1e-15) return;
    if (std::abs(c2) < 1e-12 * s) {
      if (std::abs(c1) >= 1e-12 * s) candidates.push_back(a - (c0 / c1) * b);
      return;
    }
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) {
      if (disc > -1e-10 * (c1 * c1 + std::abs(4.0 * c2 * c0) + 1e-300))
        disc = 0.0;
      else
        return;
    }
    double r = std::sqrt(disc);
    candidates.push_back(a + ((-c1 + r) / (2.0 * c2)) * b);
    candidates.push_back(a + ((-c1 - r) / (2.0 * c2)) * b);
  };
  add_roots(u1, u2);
  add_roots(u2, u1);

  std::optional<Vec8> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Vec8& c : candidates) {
    double rn = c.head<4>().norm();
    if (rn < 1e-9 * c.norm()) continue;
    Vec8 x = c / rn;
    double jx = cost_value(q, x);
    if (jx < best_cost) {
      best_cost = jx;
      best = x;
    }
  }
  return best;
}

Vec8 recover_solution(const Mat8& z, const CostMatrix& q, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Mat8> es(z);
  const auto& evals = es.eigenvalues();
  double lmax = std::abs(evals(7));
  double qscale = q.q.cwiseAbs().maxCoeff();
  if (lmax < 1e-12 * std::max(qscale, 1e-300) || qscale == 0.0)
    throw UnderConstrainedError();

  double thresh = rank_tol * lmax;
  int dim = 0;
  while (dim < 8 && evals(dim) < thresh) ++dim;
  if (dim == 0) dim = 1;  // boundary eigenvalue just above the threshold
  if (dim > 2) throw UnderConstrainedError();

  if (dim == 1) {
    Vec8 u = es.eigenvectors().col(0);
    double rn = u.head<4>().norm();
    if (rn < 1e-6) throw UnderConstrainedError();
    return u / rn;
  }
  auto x = combine_null_vectors(es.eigenvectors().col(0),
                                es.eigenvectors().col(1), q);
  if (!x) throw UnderConstrainedError();
  return *x;
}

void check_cost_matrix(const CostMatrix& q) {
  double scale = q.q.cwiseAbs().maxCoeff();
  if ((q.q - q.q.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (scale + 1.0))
    throw SolverError("cost matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat8> es(q.q, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -1e-9 * std::max(es.eigenvalues()(7), 1.0))
    throw SolverError("cost matrix is not positive semidefinite");
}

}  // namespace

CalibrationResult solve(const CostMatrix& q, const SolverOptions& opts) {
  check_cost_matrix(q);

  Eigen::SelfAdjointEigenSolver<Mat8> esq(q.q, Eigen::EigenvaluesOnly);
  double scale = std::max(esq.eigenvalues()(7), 0.0);
  if (scale <= 0.0) throw UnderConstrainedError();

  // Feasibility boundary in mu: lambda_min(Z) is non-increasing in mu since
  // P_r <= 0, so the dual optimum is the largest mu with
  // max_nu lambda_min(Z(mu, nu)) >= 0. mu = 0, nu = 0 is always feasible.
  double lo = 0.0;
  InnerResult at_lo = maximize_over_nu(q, lo, scale);

  double hi = std::max(1.0, scale);
  InnerResult at_hi = maximize_over_nu(q, hi, scale);
  int guard = 0;
  while (at_hi.value >= 0.0) {
    lo = hi;
    at_lo = at_hi;
    hi *= 2.0;
    at_hi = maximize_over_nu(q, hi, scale);
    if (++guard > 60) throw SolverError("dual ascent did not bracket");
  }

  const double width_tol = 1e-14 * std::max(1.0, scale);
  for (int it = 0; it < opts.max_iter && (hi - lo) > width_tol; ++it) {
    double mid = 0.5 * (lo + hi);
    InnerResult at_mid = maximize_over_nu(q, mid, scale);
    if (at_mid.value >= 0.0) {
      lo = mid;  // mu is non-decreasing across iterations
      at_lo = at_mid;
    } else {
      hi = mid;
    }
  }

  double mu = lo;
  double nu = at_lo.nu;
  Mat8 z = dual_matrix(q, mu, nu);
  Vec8 x = recover_solution(z, q, opts.rank_tol);

  CalibrationResult result;
  result.x = dq_normalize(DualQuat::from_vec(x));
  result.cost = cost_value(q, result.x.vec());
  result.dual_value = mu;
  result.gap = result.cost - mu;
  result.mu = mu;
  result.nu = nu;

  if (result.gap > opts.gap_tol * std::max(1.0, result.cost) &&
      result.gap > 10.0 * width_tol)
    throw SolverError("dual solver did not converge to the gap tolerance");
  return result;
}

EigenInit eigen_init(const CostMatrix& q, const SolverOptions& opts) {
  check_cost_matrix(q);
  Eigen::SelfAdjointEigenSolver<Mat8> es(q.q);
  const auto& evals = es.eigenvalues();
  if (std::abs(evals(7)) < 1e-300 ||
      evals(2) < opts.rank_tol * std::abs(evals(7)))
    throw UnderConstrainedError();
  auto x = combine_null_vectors(es.eigenvectors().col(0),
                                es.eigenvectors().col(1), q);
  if (!x) throw UnderConstrainedError();
  return EigenInit{-evals(0), 0.0, *x};
}

bool certify(const CostMatrix& q, const CalibrationResult& result, double tol) {
  Mat8 z = dual_matrix(q, result.mu, result.nu);
  double qnorm = q.q.norm();
  bool psd = lambda_min(z) >= -tol * std::max(qnorm, 1e-300);
  bool small_gap = result.gap <= tol * std::max(1.0, result.cost);
  return psd && small_gap;
}

}  // namespace handeye
