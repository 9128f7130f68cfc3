#include "handeye/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace handeye {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Sort eigenpairs of a symmetric 3x3 matrix by |lambda| ascending.
void sorted_eig(const Mat3& s, Vec3& values, Mat3& vectors) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(s);
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return std::abs(es.eigenvalues()(i)) < std::abs(es.eigenvalues()(j));
  });
  for (int k = 0; k < 3; ++k) {
    values(k) = es.eigenvalues()(idx[k]);
    vectors.col(k) = es.eigenvectors().col(idx[k]);
  }
}

double condition_of(const Vec3& values) {
  double lo = std::abs(values(0));
  double hi = std::abs(values(2));
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace

std::array<Vec3, 6> probe_deviations() {
  return {Vec3(1, 0, 0),
          Vec3(0, 1, 0),
          Vec3(0, 0, 1),
          kInvSqrt2 * Vec3(1, 1, 0),
          kInvSqrt2 * Vec3(1, 0, 1),
          kInvSqrt2 * Vec3(0, 1, 1)};
}

double cost_deviation(const CostMatrix& q, const DualQuat& x_hat,
                      DeviationKind kind, const Vec3& p, double delta) {
  if (std::abs(p.norm() - 1.0) > kUnitTolFile)
    throw std::invalid_argument("cost_deviation: probe direction must be unit");
  DualQuat dev = kind == DeviationKind::translation
                     ? dq_from_translation(delta * p)
                     : dq_from_rotation(delta, p);
  DualQuat perturbed = dq_mul(x_hat, dev);
  return cost_value(q, perturbed.vec()) - cost_value(q, x_hat.vec());
}

SensitivityReport estimate_sensitivity(const CostMatrix& q,
                                       const DualQuat& x_hat, double delta_t,
                                       double delta_r) {
  if (!(delta_t > 0.0) || delta_t > 0.5)
    throw std::invalid_argument("estimate_sensitivity: delta_t outside (0, 0.5 m]");
  if (!(delta_r > 0.0) || delta_r > 2.0 * M_PI / 180.0)
    throw std::invalid_argument("estimate_sensitivity: delta_r outside (0, 2 deg]");

  SensitivityReport report;
  report.delta_t = delta_t;
  report.delta_r = delta_r;

  auto probes = probe_deviations();
  auto fit = [&](DeviationKind kind, double delta) {
    // The probe set makes the 6x6 system triangular: probes 1-3 give the
    // diagonal directly, probes 4-6 give the off-diagonals by subtraction.
    std::array<double, 6> dj;
    for (int k = 0; k < 6; ++k)
      dj[k] = cost_deviation(q, x_hat, kind, probes[k], delta) / (delta * delta);
    Mat3 s;
    s(0, 0) = dj[0];
    s(1, 1) = dj[1];
    s(2, 2) = dj[2];
    s(0, 1) = s(1, 0) = dj[3] - 0.5 * (dj[0] + dj[1]);
    s(0, 2) = s(2, 0) = dj[4] - 0.5 * (dj[0] + dj[2]);
    s(1, 2) = s(2, 1) = dj[5] - 0.5 * (dj[1] + dj[2]);
    return s;
  };

  report.s_t = fit(DeviationKind::translation, delta_t);
  report.s_r = fit(DeviationKind::rotation, delta_r);

  sorted_eig(report.s_t, report.eig_t_values, report.eig_t_vectors);
  sorted_eig(report.s_r, report.eig_r_values, report.eig_r_vectors);
  report.c_t = condition_of(report.eig_t_values);
  report.c_r = condition_of(report.eig_r_values);
  // Deviations compose on the right of x_hat, so v_t1 lives in sensor-b
  // coordinates; report the axis in the sensor-a frame the user observes.
  Quaternion r = x_hat.real.scaled(1.0 / x_hat.real.norm());
  Quaternion v(0.0, report.eig_t_vectors.col(0));
  report.dominant_axis = quat_mul(quat_mul(r, v), r.conjugate()).v;
  report.dominant_tie =
      std::abs(report.eig_t_values(0)) > 0.0 &&
      std::abs(std::abs(report.eig_t_values(1)) / std::abs(report.eig_t_values(0)) -
               1.0) < 1e-6;
  return report;
}

const char* advice_code_name(AdviceCode code) {
  switch (code) {
    case AdviceCode::well_conditioned:
      return "well_conditioned";
    case AdviceCode::borderline:
      return "borderline";
    case AdviceCode::add_orthogonal_rotations:
      return "add_orthogonal_rotations";
  }
  return "unknown";
}

FeedbackRecord feedback_summary(const SensitivityReport& report,
                                double c_gamma) {
  FeedbackRecord rec;
  rec.c_t = report.c_t;
  rec.c_r = report.c_r;
  rec.dominant_axis = report.dominant_axis;
  rec.dominant_tie = report.dominant_tie;

  // Borderline band: within ~10% of the blend midpoint.
  const double band = 0.1 * c_gamma;
  if (report.c_t > c_gamma + band)
    rec.advice = AdviceCode::add_orthogonal_rotations;
  else if (report.c_t >= c_gamma - band)
    rec.advice = AdviceCode::borderline;
  else
    rec.advice = AdviceCode::well_conditioned;

  std::ostringstream text;
  text.precision(3);
  text << "c_t = " << rec.c_t << ", c_r = " << rec.c_r << ". ";
  switch (rec.advice) {
    case AdviceCode::well_conditioned:
      text << "Rotation axes are well distributed; conditioning is good.";
      break;
    case AdviceCode::borderline:
      text << "Conditioning is borderline; consider adding rotations about "
              "axes orthogonal to ["
           << rec.dominant_axis.transpose() << "].";
      break;
    case AdviceCode::add_orthogonal_rotations:
      text << "Rotations about [" << rec.dominant_axis.transpose()
           << "] are overrepresented; add rotations about orthogonal axes.";
      break;
  }
  if (rec.dominant_tie)
    text << " (two weakest directions are nearly tied)";
  rec.text = text.str();
  return rec;
}

}  // namespace handeye
