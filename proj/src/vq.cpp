#include "handeye/vq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace handeye {

namespace {

constexpr int kRestarts = 50;
constexpr int kMaxIters = 100;

using MatX3 = Eigen::Matrix<double, Eigen::Dynamic, 3>;

// Assignment by largest |dot|, which is equivalent to smallest
// axis_distance; the acos is only needed for the objective.
void assign(const MatX3& x, const MatX3& c, std::vector<int>& labels) {
  Eigen::MatrixXd dots = (x * c.transpose()).cwiseAbs();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::Index j;
    dots.row(i).maxCoeff(&j);
    labels[static_cast<size_t>(i)] = static_cast<int>(j);
  }
}

double objective(const MatX3& x, const MatX3& c,
                 const std::vector<int>& labels) {
  double obj = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double d = axis_distance(x.row(i), c.row(labels[static_cast<size_t>(i)]));
    obj += d * d;
  }
  return obj;
}

MatX3 seed_plus_plus(const MatX3& x, int k, std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  MatX3 c(k, 3);
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  c.row(0) = x.row(first(rng));
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = axis_distance(x.row(i), c.row(0));
    d2(i) = d * d;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int m = 1; m < k; ++m) {
    double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      double u = unit(rng) * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= u) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);
    }
    c.row(m) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = axis_distance(x.row(i), c.row(m));
      d2(i) = std::min(d2(i), d * d);
    }
  }
  return c;
}

}  // namespace

Vec3 canonicalize_axis(const Vec3& n) {
  if (n.z() > 0.0) return n;
  if (n.z() < 0.0) return -n;
  if (n.y() > 0.0) return n;
  if (n.y() < 0.0) return -n;
  if (n.x() < 0.0) return -n;
  return n;
}

Codebook vq_codebook(const std::vector<Vec3>& axes, double k_rel,
                     std::uint64_t seed) {
  const int n = static_cast<int>(axes.size());
  if (n == 0) throw std::invalid_argument("vq_codebook: empty rotation set");
  if (!(k_rel > 0.0 && k_rel <= 1.0))
    throw std::invalid_argument("vq_codebook: k_rel outside (0, 1]");
  int k = std::clamp(static_cast<int>(std::lround(k_rel * n)), 1, n);

  MatX3 x(n, 3);
  for (int i = 0; i < n; ++i) x.row(i) = canonicalize_axis(axes[i]);

  std::mt19937_64 rng(seed);
  MatX3 best_c;
  double best_obj = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < kRestarts; ++restart) {
    MatX3 c = seed_plus_plus(x, k, rng);
    std::vector<int> labels(n, -1), prev(n, -2);
    for (int it = 0; it < kMaxIters; ++it) {
      assign(x, c, labels);
      if (labels == prev) break;
      prev = labels;
      // centroid update: mean of members flipped toward the centroid
      MatX3 sums = MatX3::Zero(k, 3);
      std::vector<int> counts(k, 0);
      for (int i = 0; i < n; ++i) {
        int j = labels[i];
        Vec3 a = x.row(i);
        if (a.dot(c.row(j)) < 0.0) a = -a;
        sums.row(j) += a.transpose();
        ++counts[j];
      }
      for (int j = 0; j < k; ++j) {
        double norm = sums.row(j).norm();
        if (counts[j] == 0 || norm < 1e-12) {
          // reseed an empty/degenerate cluster to the farthest point
          Eigen::Index far = 0;
          double far_d = -1.0;
          for (int i = 0; i < n; ++i) {
            double d = axis_distance(x.row(i), c.row(labels[i]));
            if (d > far_d) {
              far_d = d;
              far = i;
            }
          }
          c.row(j) = x.row(far);
        } else {
          c.row(j) = canonicalize_axis(sums.row(j) / norm).transpose();
        }
      }
    }
    assign(x, c, labels);
    double obj = objective(x, c, labels);
    if (obj < best_obj) {
      best_obj = obj;
      best_c = c;
    }
    if (k == n) break;  // every point is its own centroid
  }

  Codebook book;
  book.k = k;
  book.k_rel = k_rel;
  book.centroids.reserve(k);
  for (int j = 0; j < k; ++j) book.centroids.push_back(best_c.row(j));
  return book;
}

std::vector<MotionPair> vq_select(const RotationSplit& split, double k_rel,
                                  std::uint64_t seed) {
  if (split.rotation.empty())
    throw std::invalid_argument("vq_select: empty rotation set");
  std::vector<Vec3> axes;
  axes.reserve(split.rotation.size());
  for (const RotationSample& s : split.rotation) axes.push_back(s.axis);

  Codebook book = vq_codebook(axes, k_rel, seed);

  std::vector<MotionPair> selected = split.no_rotation;
  std::vector<bool> used(split.rotation.size(), false);
  for (const Vec3& c : book.centroids) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < split.rotation.size(); ++i) {
      if (used[i]) continue;
      double d = axis_distance(c, canonicalize_axis(split.rotation[i].axis));
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      used[static_cast<size_t>(best)] = true;
      selected.push_back(split.rotation[static_cast<size_t>(best)].pair);
    }
  }
  return selected;
}

}  // namespace handeye
