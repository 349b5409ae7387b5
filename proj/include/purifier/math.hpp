#pragma once

// 3D math primitives shared by every module.
//
// Conventions (fixed project-wide):
//   - right-handed coordinate system, Y up
//   - controller forward is local -Z
//   - all scalars are double; no parallel reductions in math paths

#include <cmath>
#include <limits>

#include "purifier/error.hpp"

namespace purifier {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool operator==(const Vec3& o) const = default;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  double n = norm(v);
  if (n < 1e-12) {
    throw Error(ErrorKind::Runtime, "cannot normalize near-zero vector");
  }
  return v * (1.0 / n);
}

// Angle between two (not necessarily unit) vectors, in [0, pi].
// atan2 of cross/dot is stable near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static Quat identity() { return {}; }

  static Quat from_axis_angle(const Vec3& axis, double angle) {
    Vec3 u = purifier::normalized(axis);
    double h = 0.5 * angle;
    double s = std::sin(h);
    return {std::cos(h), u.x * s, u.y * s, u.z * s};
  }

  Quat conjugate() const { return {w, -x, -y, -z}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quat normalized() const {
    double n = norm();
    if (n < 1e-12) {
      throw Error(ErrorKind::Runtime, "cannot normalize near-zero quaternion");
    }
    double inv = 1.0 / n;
    return {w * inv, x * inv, y * inv, z * inv};
  }

  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  // Rotate a vector by this (unit) quaternion.
  Vec3 rotate(const Vec3& v) const {
    Vec3 u{x, y, z};
    Vec3 t = 2.0 * cross(u, v);
    return v + w * t + cross(u, t);
  }

  bool operator==(const Quat& o) const = default;
};

// Controller forward axis in local space.
inline constexpr Vec3 kForward{0.0, 0.0, -1.0};
inline constexpr Vec3 kUp{0.0, 1.0, 0.0};
inline constexpr Vec3 kRight{1.0, 0.0, 0.0};

struct Pose {
  Vec3 position;
  Quat orientation;

  Vec3 forward() const { return orientation.rotate(kForward); }
};

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length

  Ray(const Vec3& o, const Vec3& d) : origin(o), direction(normalized(d)) {}

  Vec3 at(double t) const { return origin + t * direction; }
};

struct Cone {
  Vec3 apex;
  Vec3 axis;  // unit length
  double half_angle;

  Cone(const Vec3& apex_, const Vec3& axis_, double half_angle_)
      : apex(apex_), axis(normalized(axis_)), half_angle(half_angle_) {
    if (!(half_angle > 0.0 && half_angle < kPi / 2.0)) {
      throw Error(ErrorKind::Config, "cone half_angle must be in (0, pi/2)");
    }
  }
};

// Angle between the cone axis and (point - apex), in [0, pi].
inline double angle_to_axis(const Cone& cone, const Vec3& point) {
  Vec3 d = point - cone.apex;
  if (norm(d) <= 1e-12) {
    throw Error(ErrorKind::Runtime, "coincident with apex");
  }
  return angle_between(cone.axis, d);
}

// Signed rotation of `orientation` about the controller forward axis,
// relative to `reference`, in (-pi, pi]. Swing-twist decomposition of the
// relative rotation; the twist about local -Z is the roll. Positive is a
// rightward tilt.
inline double roll_about_forward(const Quat& orientation,
                                 const Quat& reference) {
  Quat rel = (reference.conjugate() * orientation).normalized();
  // Project the vector part onto the forward axis.
  double proj = rel.x * kForward.x + rel.y * kForward.y + rel.z * kForward.z;
  double w = rel.w;
  if (w < 0.0) {  // q and -q encode the same rotation; pick the w >= 0 rep
    w = -w;
    proj = -proj;
  }
  if (std::abs(proj) < 1e-15 && std::abs(w) < 1e-15) {
    return 0.0;
  }
  double angle = 2.0 * std::atan2(proj, w);
  if (angle > kPi) angle -= 2.0 * kPi;
  if (angle <= -kPi) angle += 2.0 * kPi;
  return angle;
}

inline double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace purifier
