#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <optional>
#include <utility>

namespace spraysim {

using Vec3 = Eigen::Vector3d;

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wrap to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

// World frame: z up, meters. The vehicle is yaw-only (never pitches or
// rolls), so a pose is a position plus a heading about z.
struct Pose {
  Vec3 position{0.0, 0.0, 0.0};
  double yaw = 0.0;

  Vec3 heading() const { return {std::cos(yaw), std::sin(yaw), 0.0}; }

  Eigen::Matrix3d rotation() const {
    return Eigen::AngleAxisd(yaw, Vec3::UnitZ()).toRotationMatrix();
  }

  // Body frame (x forward, y left, z up) to world.
  Vec3 transform(const Vec3& local) const { return position + rotation() * local; }
};

inline double yaw_from_direction(const Vec3& d) { return std::atan2(d.y(), d.x()); }

struct Aabb {
  Vec3 min{0.0, 0.0, 0.0};
  Vec3 max{0.0, 0.0, 0.0};

  Vec3 center() const { return 0.5 * (min + max); }
  Vec3 extents() const { return max - min; }

  bool valid() const {
    return min.x() <= max.x() && min.y() <= max.y() && min.z() <= max.z();
  }

  bool contains(const Vec3& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y() && p.z() >= min.z() && p.z() <= max.z();
  }

  bool contains(const Aabb& other) const {
    return contains(other.min) && contains(other.max);
  }

  // Strict overlap; face contact does not count.
  bool intersects(const Aabb& other) const {
    return min.x() < other.max.x() && other.min.x() < max.x() &&
           min.y() < other.max.y() && other.min.y() < max.y() &&
           min.z() < other.max.z() && other.min.z() < max.z();
  }
};

// Slab test. Returns the entry distance t >= 0 with origin + t*dir inside
// the box, or nullopt if the ray misses within [0, t_max]. dir need not be
// unit length; t is in units of |dir|.
inline std::optional<double> ray_aabb(const Vec3& origin, const Vec3& dir,
                                      const Aabb& box, double t_max) {
  double t0 = 0.0;
  double t1 = t_max;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(dir[i]) < 1e-12) {
      if (origin[i] < box.min[i] || origin[i] > box.max[i]) return std::nullopt;
      continue;
    }
    const double inv = 1.0 / dir[i];
    double ta = (box.min[i] - origin[i]) * inv;
    double tb = (box.max[i] - origin[i]) * inv;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return t0;
}

// Clips the segment a + t*(b - a), t in [0, 1], against the box. Returns the
// parameter interval inside, or nullopt.
inline std::optional<std::pair<double, double>> clip_segment_aabb(
    const Vec3& a, const Vec3& b, const Aabb& box) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec3 d = b - a;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-12) {
      if (a[i] < box.min[i] || a[i] > box.max[i]) return std::nullopt;
      continue;
    }
    const double inv = 1.0 / d[i];
    double ta = (box.min[i] - a[i]) * inv;
    double tb = (box.max[i] - a[i]) * inv;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(t0, t1);
}

// Oriented box: column i of axes is the i-th local axis direction.
struct Obb {
  Vec3 center{0.0, 0.0, 0.0};
  Eigen::Matrix3d axes = Eigen::Matrix3d::Identity();
  Vec3 half{0.0, 0.0, 0.0};

  Vec3 corner(int i) const {
    const Vec3 s{(i & 1) ? half.x() : -half.x(), (i & 2) ? half.y() : -half.y(),
                 (i & 4) ? half.z() : -half.z()};
    return center + axes * s;
  }
};

inline std::optional<double> ray_obb(const Vec3& origin, const Vec3& dir,
                                     const Obb& box, double t_max) {
  const Vec3 local_origin = box.axes.transpose() * (origin - box.center);
  const Vec3 local_dir = box.axes.transpose() * dir;
  const Aabb local{-box.half, box.half};
  return ray_aabb(local_origin, local_dir, local, t_max);
}

}  // namespace spraysim
