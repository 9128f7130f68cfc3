#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace handeye {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat8 = Eigen::Matrix<double, 8, 8>;

// Unit tolerance for values produced by constructors / algebra.
inline constexpr double kUnitTol = 1e-9;
// Looser tolerance for values parsed from files (fewer digits).
inline constexpr double kUnitTolFile = 1e-6;

// Quaternion in scalar-vector form q = (s, v).
struct Quaternion {
  double s{1.0};
  Vec3 v{Vec3::Zero()};

  Quaternion() = default;
  Quaternion(double s_, const Vec3& v_) : s(s_), v(v_) {}

  Vec4 vec() const { return Vec4(s, v.x(), v.y(), v.z()); }
  static Quaternion from_vec(const Vec4& q) {
    return Quaternion(q(0), q.tail<3>());
  }

  double norm() const { return std::sqrt(s * s + v.squaredNorm()); }
  double dot(const Quaternion& o) const { return s * o.s + v.dot(o.v); }
  Quaternion conjugate() const { return Quaternion(s, -v); }
  Quaternion scaled(double a) const { return Quaternion(a * s, a * v); }

  Quaternion operator+(const Quaternion& o) const {
    return Quaternion(s + o.s, v + o.v);
  }
  Quaternion operator-(const Quaternion& o) const {
    return Quaternion(s - o.s, v - o.v);
  }
};

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return Quaternion(a.s * b.s - a.v.dot(b.v),
                    a.s * b.v + b.s * a.v + a.v.cross(b.v));
}

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(),
       v.z(), 0, -v.x(),
       -v.y(), v.x(), 0;
  return m;
}

// Left multiplication matrix: vec(q b) = quat_left(q) vec(b).
inline Mat4 quat_left(const Quaternion& q) {
  Mat4 m;
  m(0, 0) = q.s;
  m.block<1, 3>(0, 1) = -q.v.transpose();
  m.block<3, 1>(1, 0) = q.v;
  m.block<3, 3>(1, 1) = q.s * Mat3::Identity() + skew(q.v);
  return m;
}

// Right multiplication matrix: vec(a q) = quat_right(q) vec(a).
inline Mat4 quat_right(const Quaternion& q) {
  Mat4 m;
  m(0, 0) = q.s;
  m.block<1, 3>(0, 1) = -q.v.transpose();
  m.block<3, 1>(1, 0) = q.v;
  m.block<3, 3>(1, 1) = q.s * Mat3::Identity() - skew(q.v);
  return m;
}

// Unit dual quaternion q = r + eps d with ||r|| = 1 and <r, d> = 0.
struct DualQuat {
  Quaternion real;
  Quaternion dual{0.0, Vec3::Zero()};

  DualQuat() = default;
  DualQuat(const Quaternion& r, const Quaternion& d) : real(r), dual(d) {}

  static DualQuat identity() { return DualQuat(); }

  Vec8 vec() const {
    Vec8 x;
    x.head<4>() = real.vec();
    x.tail<4>() = dual.vec();
    return x;
  }
  static DualQuat from_vec(const Vec8& x) {
    return DualQuat(Quaternion::from_vec(x.head<4>()),
                    Quaternion::from_vec(x.tail<4>()));
  }

  DualQuat conjugate() const {
    return DualQuat(real.conjugate(), dual.conjugate());
  }
  DualQuat negated() const {
    return DualQuat(real.scaled(-1.0), dual.scaled(-1.0));
  }

  // Translation vector t with d = 1/2 (0, t) r.
  Vec3 translation() const {
    Quaternion t = quat_mul(dual.scaled(2.0), real.conjugate());
    return t.v;
  }

  double unit_residual_real() const { return std::abs(real.norm() - 1.0); }
  double unit_residual_dual() const { return std::abs(real.dot(dual)); }
  bool is_unit(double tol = kUnitTol) const {
    return unit_residual_real() <= tol && unit_residual_dual() <= tol;
  }
};

inline DualQuat dq_mul(const DualQuat& a, const DualQuat& b) {
  return DualQuat(quat_mul(a.real, b.real),
                  quat_mul(a.real, b.dual) + quat_mul(a.dual, b.real));
}

inline DualQuat dq_from_translation(const Vec3& t) {
  return DualQuat(Quaternion(1.0, Vec3::Zero()),
                  Quaternion(0.0, 0.5 * t));
}

inline DualQuat dq_from_rotation(double phi, const Vec3& n) {
  if (std::abs(n.norm() - 1.0) > kUnitTolFile)
    throw std::invalid_argument("dq_from_rotation: axis must be unit length");
  return DualQuat(Quaternion(std::cos(0.5 * phi), std::sin(0.5 * phi) * n),
                  Quaternion(0.0, Vec3::Zero()));
}

inline DualQuat dq_from_pose(const Vec3& t, double phi, const Vec3& n) {
  return dq_mul(dq_from_translation(t), dq_from_rotation(phi, n));
}

inline DualQuat dq_conjugate(const DualQuat& q) { return q.conjugate(); }

// For unit DQs the conjugate is the inverse.
inline DualQuat dq_inverse(const DualQuat& q) {
  double n2 = q.real.s * q.real.s + q.real.v.squaredNorm();
  if (n2 < 1e-24)
    throw std::invalid_argument("dq_inverse: near-zero real part");
  Quaternion rinv = q.real.conjugate().scaled(1.0 / n2);
  // d^-1 = -r^-1 d r^-1
  Quaternion dinv = quat_mul(quat_mul(rinv, q.dual), rinv).scaled(-1.0);
  return DualQuat(rinv, dinv);
}

// Rescale the real part to unit norm and project the dual part onto the
// subspace orthogonal to it.
inline DualQuat dq_normalize(const DualQuat& q) {
  double n = q.real.norm();
  if (n < 1e-12)
    throw std::invalid_argument("dq_normalize: near-zero real part");
  Quaternion r = q.real.scaled(1.0 / n);
  Quaternion d = q.dual.scaled(1.0 / n);
  d = d - r.scaled(r.dot(d));
  return DualQuat(r, d);
}

// Rotation angle in [0, pi] of the real part, treating +-q as equal.
inline double rotation_angle(const DualQuat& q) {
  double c = std::min(1.0, std::abs(q.real.s) / q.real.norm());
  return 2.0 * std::acos(c);
}

// Rotation axis of the real part; arbitrary (+z) for zero rotation.
inline Vec3 rotation_axis(const DualQuat& q) {
  double n = q.real.v.norm();
  if (n < 1e-15) return Vec3(0, 0, 1);
  return q.real.v / n;
}

// Left/right matrix representations of a DQ product.
struct DQMatrixRep {
  Mat8 plus;   // vec(q a) = plus * vec(a)
  Mat8 minus;  // vec(a q) = minus * vec(a)
};

inline DQMatrixRep matrix_reps(const DualQuat& q) {
  DQMatrixRep rep;
  rep.plus.setZero();
  rep.minus.setZero();
  Mat4 rl = quat_left(q.real);
  Mat4 dl = quat_left(q.dual);
  rep.plus.block<4, 4>(0, 0) = rl;
  rep.plus.block<4, 4>(4, 4) = rl;
  rep.plus.block<4, 4>(4, 0) = dl;
  Mat4 rr = quat_right(q.real);
  Mat4 dr = quat_right(q.dual);
  rep.minus.block<4, 4>(0, 0) = rr;
  rep.minus.block<4, 4>(4, 4) = rr;
  rep.minus.block<4, 4>(4, 0) = dr;
  return rep;
}

// Flip the global sign so the first nonzero real component is positive.
// Applied only at I/O and comparison boundaries.
inline Vec8 vec_canonical(const Vec8& x) {
  for (int i = 0; i < 4; ++i) {
    if (x(i) > 0.0) return x;
    if (x(i) < 0.0) return -x;
  }
  return x;
}

inline DualQuat dq_canonical(const DualQuat& q) {
  return DualQuat::from_vec(vec_canonical(q.vec()));
}

}  // namespace handeye
