#pragma once

#include <cstdint>
#include <vector>

#include "handeye/weighting.hpp"

namespace handeye {

struct Codebook {
  std::vector<Vec3> centroids;  // unit axes, canonical hemisphere
  int k{0};
  double k_rel{0.2};
};

// Flip an axis into the hemisphere with non-negative z (ties broken by
// non-negative y, then x).
Vec3 canonicalize_axis(const Vec3& n);

// k-means++ on rotation axes under the antipodal-aware axis distance.
Codebook vq_codebook(const std::vector<Vec3>& axes, double k_rel,
                     std::uint64_t seed);

// All no-rotation samples plus, per centroid, the nearest not-yet-selected
// rotation sample.
std::vector<MotionPair> vq_select(const RotationSplit& split,
                                  double k_rel = 0.2, std::uint64_t seed = 0);

}  // namespace handeye
