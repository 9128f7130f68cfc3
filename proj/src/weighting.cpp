#include "handeye/weighting.hpp"

#include <cmath>
#include <stdexcept>

namespace handeye {

RotationSplit split_by_rotation(const std::vector<MotionPair>& pairs,
                                DensitySource source, double threshold) {
  RotationSplit split;
  split.threshold = threshold;
  for (const MotionPair& p : pairs) {
    const DualQuat& motion = source == DensitySource::sensor_a ? p.a : p.b;
    double angle = rotation_angle(motion);
    if (angle < threshold) {
      split.no_rotation.push_back(p);
    } else {
      split.rotation.push_back({p, rotation_axis(motion), angle});
    }
  }
  return split;
}

double axis_distance(const Vec3& n_i, const Vec3& n_j) {
  double c = std::clamp(n_i.dot(n_j), -1.0, 1.0);
  return M_PI / 2.0 - std::abs(std::acos(c) - M_PI / 2.0);
}

double kernel(double x, double d_r) {
  if (!(d_r > 0.0)) throw std::invalid_argument("kernel: d_r must be positive");
  return std::exp(-x * x / (2.0 * d_r * d_r));
}

DensityResult densities(const RotationSplit& split, double d_r) {
  const size_t n = split.rotation.size();
  if (n == 0)
    throw std::invalid_argument("densities: empty rotation set");
  DensityResult res;
  res.d_r = d_r;
  res.densities.assign(n, 0.0);
  // full pairwise sum including j = i, so rho_i >= 1
  for (size_t i = 0; i < n; ++i) {
    double rho = 0.0;
    for (size_t j = 0; j < n; ++j)
      rho += kernel(axis_distance(split.rotation[i].axis,
                                  split.rotation[j].axis),
                    d_r);
    res.densities[i] = rho;
  }
  res.weights_rho.resize(n);
  double sigma = 0.0;
  for (size_t i = 0; i < n; ++i) {
    res.weights_rho[i] = 1.0 / std::sqrt(res.densities[i]);
    sigma += res.weights_rho[i];
  }
  res.sigma_rho = sigma;
  return res;
}

DensityAccumulator::DensityAccumulator(double d_r) : d_r_(d_r) {
  if (!(d_r > 0.0))
    throw std::invalid_argument("DensityAccumulator: d_r must be positive");
}

void DensityAccumulator::add(const Vec3& axis) {
  double rho = 1.0;  // self term
  for (size_t j = 0; j < axes_.size(); ++j) {
    double k = kernel(axis_distance(axis, axes_[j]), d_r_);
    rho_[j] += k;
    rho += k;
  }
  axes_.push_back(axis);
  rho_.push_back(rho);
}

DensityResult DensityAccumulator::result() const {
  if (axes_.empty())
    throw std::invalid_argument("DensityAccumulator: no axes added");
  DensityResult res;
  res.d_r = d_r_;
  res.densities = rho_;
  res.weights_rho.resize(rho_.size());
  double sigma = 0.0;
  for (size_t i = 0; i < rho_.size(); ++i) {
    res.weights_rho[i] = 1.0 / std::sqrt(rho_[i]);
    sigma += res.weights_rho[i];
  }
  res.sigma_rho = sigma;
  return res;
}

std::vector<MotionPair> reweighted_pairs(const RotationSplit& split,
                                         const DensityResult& dens) {
  if (dens.weights_rho.size() != split.rotation.size())
    throw std::invalid_argument("reweighted_pairs: inconsistent inputs");
  std::vector<MotionPair> pairs;
  pairs.reserve(split.no_rotation.size() + split.rotation.size());
  for (const MotionPair& p : split.no_rotation) {
    MotionPair q = p;
    q.weight = 1.0;
    pairs.push_back(q);
  }
  const double n_r = static_cast<double>(split.rotation.size());
  for (size_t i = 0; i < split.rotation.size(); ++i) {
    MotionPair q = split.rotation[i].pair;
    q.weight = n_r * dens.weights_rho[i] / dens.sigma_rho;
    pairs.push_back(q);
  }
  return pairs;
}

CostMatrix weighted_cost(const RotationSplit& split,
                         const DensityResult& dens) {
  return build_cost(reweighted_pairs(split, dens));
}

double blend_gamma(double c_t, double c_gamma, double s_gamma) {
  return 1.0 / (1.0 + std::exp(s_gamma * (c_gamma - c_t)));
}

CostMatrix combined_cost(const CostMatrix& q, const CostMatrix& q_w,
                         double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("combined_cost: gamma outside [0, 1]");
  CostMatrix out;
  out.q = (1.0 - gamma) * q.q + gamma * q_w.q;
  return out;
}

PipelineResult auto_weighted_calibrate(const std::vector<MotionPair>& pairs,
                                       const WeightingParams& params) {
  if (pairs.empty())
    throw std::invalid_argument("auto_weighted_calibrate: empty input");

  std::vector<MotionPair> uniform = pairs;
  for (MotionPair& p : uniform) p.weight = 1.0;
  CostMatrix q = build_cost(uniform);

  PipelineResult res;
  res.unweighted = solve(q, params.solver);
  res.sensitivity =
      estimate_sensitivity(q, res.unweighted.x, params.delta_t, params.delta_r);

  RotationSplit split =
      split_by_rotation(pairs, params.source, params.threshold);
  if (split.rotation.empty()) throw UnderConstrainedError();
  res.density = densities(split, params.d_r);
  CostMatrix q_w = weighted_cost(split, res.density);

  // An unbounded c_t (exactly planar data) saturates the sigmoid.
  res.gamma = std::isfinite(res.sensitivity.c_t)
                  ? blend_gamma(res.sensitivity.c_t, params.c_gamma,
                                params.s_gamma)
                  : 1.0;
  CostMatrix q_gamma = combined_cost(q, q_w, res.gamma);
  res.final = solve(q_gamma, params.solver);
  return res;
}

}  // namespace handeye
