#pragma once

#include "spraysim/geometry.hpp"
#include "spraysim/sensors.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace spraysim {

enum class Voxel : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

enum class TreatUnknown { Free, Occupied };

// Visits every voxel the segment [a, b] passes through, in order, starting
// with a's voxel. Coordinates are relative to `origin` with cubic voxels of
// size `resolution`; voxel i spans [i*res, (i+1)*res). Callback returns
// false to stop early.
//
// Amanatides & Woo, "A Fast Voxel Traversal Algorithm for Ray Tracing",
// Eurographics 1987.
template <class F>
inline void traverse_voxels(const Vec3& origin, double resolution, const Vec3& a,
                            const Vec3& b, F&& fn) {
  const Vec3 ra = (a - origin) / resolution;
  const Vec3 rb = (b - origin) / resolution;
  Eigen::Vector3i cur(static_cast<int>(std::floor(ra.x())),
                      static_cast<int>(std::floor(ra.y())),
                      static_cast<int>(std::floor(ra.z())));
  const Eigen::Vector3i end(static_cast<int>(std::floor(rb.x())),
                            static_cast<int>(std::floor(rb.y())),
                            static_cast<int>(std::floor(rb.z())));
  const Vec3 d = rb - ra;

  Eigen::Vector3i step{0, 0, 0};
  Vec3 t_max{1e30, 1e30, 1e30};
  Vec3 t_delta{1e30, 1e30, 1e30};
  for (int i = 0; i < 3; ++i) {
    if (d[i] > 1e-12) {
      step[i] = 1;
      t_delta[i] = 1.0 / d[i];
      t_max[i] = (cur[i] + 1 - ra[i]) / d[i];
    } else if (d[i] < -1e-12) {
      step[i] = -1;
      t_delta[i] = -1.0 / d[i];
      t_max[i] = (cur[i] - ra[i]) / d[i];
    }
  }

  // Guard against fp edge cases at shared boundaries.
  int remaining = (end - cur).cwiseAbs().sum() + 1;
  while (true) {
    if (!fn(cur)) return;
    if (cur == end || --remaining <= 0) return;
    int axis = 0;
    if (t_max[1] < t_max[axis]) axis = 1;
    if (t_max[2] < t_max[axis]) axis = 2;
    cur[axis] += step[axis];
    t_max[axis] += t_delta[axis];
  }
}

// Tri-state occupancy grid. Newly constructed grids are all Unknown; rays
// carve Free, endpoints mark Occupied, and Occupied always wins over Free.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(const Aabb& bounds, double resolution);

  double resolution() const { return resolution_; }
  const Vec3& origin() const { return origin_; }
  const Eigen::Vector3i& dims() const { return dims_; }
  Aabb world_box() const {
    return {origin_, origin_ + resolution_ * dims_.cast<double>()};
  }

  bool in_bounds(const Eigen::Vector3i& idx) const {
    return idx.x() >= 0 && idx.y() >= 0 && idx.z() >= 0 && idx.x() < dims_.x() &&
           idx.y() < dims_.y() && idx.z() < dims_.z();
  }
  Eigen::Vector3i voxel_of(const Vec3& p) const {
    const Vec3 r = (p - origin_) / resolution_;
    return {static_cast<int>(std::floor(r.x())), static_cast<int>(std::floor(r.y())),
            static_cast<int>(std::floor(r.z()))};
  }
  Vec3 voxel_center(const Eigen::Vector3i& idx) const {
    return origin_ + resolution_ * (idx.cast<double>() + Vec3(0.5, 0.5, 0.5));
  }

  Voxel at(const Eigen::Vector3i& idx) const { return cells_[flat(idx)]; }
  void set(const Eigen::Vector3i& idx, Voxel v) { cells_[flat(idx)] = v; }

  // Marks each point's voxel Occupied and carves Free along the sensor ray
  // up to (but excluding) that voxel. Points outside the grid clamp to the
  // boundary and only carve. A sensor origin slightly outside the grid is
  // tolerated by clipping each ray to the grid box.
  void integrate_pointcloud(const PointCloud& cloud, const Vec3& sensor_origin);

  // Free-space carving for no-return rays: every voxel along [a, b] becomes
  // Free unless already Occupied, endpoint included. Never marks Occupied.
  void carve_free_segment(const Vec3& a, const Vec3& b);

  // True iff no voxel overlapping the axis-aligned cuboid is Occupied (nor
  // Unknown, when unknown counts as occupied). Any portion outside the grid
  // counts as Unknown.
  bool is_cuboid_free(const Vec3& center, const Vec3& half_extents,
                      TreatUnknown treat_unknown) const;

  // One line per non-unknown voxel: "x y z state" with state free|occupied.
  void dump(std::ostream& os) const;

  std::size_t count(Voxel v) const;

 private:
  std::size_t flat(const Eigen::Vector3i& idx) const {
    return (static_cast<std::size_t>(idx.z()) * dims_.y() + idx.y()) * dims_.x() +
           idx.x();
  }

  double resolution_ = 0.10;
  Vec3 origin_{0.0, 0.0, 0.0};
  Eigen::Vector3i dims_{0, 0, 0};
  std::vector<Voxel> cells_;
};

}  // namespace spraysim
