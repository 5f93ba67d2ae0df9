#include "spraysim/mapping.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace spraysim {

VoxelGrid::VoxelGrid(const Aabb& bounds, double resolution) {
  if (resolution <= 0.0) throw std::invalid_argument("VoxelGrid: resolution must be > 0");
  if (!bounds.valid()) throw std::invalid_argument("VoxelGrid: invalid bounds");
  resolution_ = resolution;
  origin_ = bounds.min;
  const Vec3 span = bounds.max - bounds.min;
  for (int i = 0; i < 3; ++i)
    dims_[i] = std::max(1, static_cast<int>(std::ceil(span[i] / resolution - 1e-9)));
  cells_.assign(static_cast<std::size_t>(dims_.x()) * dims_.y() * dims_.z(),
                Voxel::Unknown);
}

void VoxelGrid::integrate_pointcloud(const PointCloud& cloud, const Vec3& sensor_origin) {
  const Aabb box = world_box();
  // Pull the working box in a hair so clipped endpoints floor to valid
  // indices.
  const Vec3 eps{1e-9, 1e-9, 1e-9};
  const Aabb inner{box.min + eps, box.max - eps};

  Vec3 start = sensor_origin;
  for (int i = 0; i < 3; ++i) start[i] = std::clamp(start[i], inner.min[i], inner.max[i]);

  for (const Vec3& p : cloud) {
    Vec3 end = p;
    bool mark_occupied = inner.contains(p);
    if (!mark_occupied) {
      const auto clip = clip_segment_aabb(start, p, inner);
      if (!clip) continue;
      end = start + clip->second * (p - start);
    }
    const Eigen::Vector3i end_idx = voxel_of(end);
    traverse_voxels(origin_, resolution_, start, end, [&](const Eigen::Vector3i& idx) {
      if (!in_bounds(idx)) return true;
      if (idx == end_idx) {
        if (mark_occupied) set(idx, Voxel::Occupied);
        else if (at(idx) != Voxel::Occupied) set(idx, Voxel::Free);
        return false;
      }
      if (at(idx) != Voxel::Occupied) set(idx, Voxel::Free);
      return true;
    });
  }
}

void VoxelGrid::carve_free_segment(const Vec3& a, const Vec3& b) {
  const Aabb box = world_box();
  const Vec3 eps{1e-9, 1e-9, 1e-9};
  const Aabb inner{box.min + eps, box.max - eps};

  Vec3 start = a;
  for (int i = 0; i < 3; ++i) start[i] = std::clamp(start[i], inner.min[i], inner.max[i]);
  Vec3 end = b;
  if (!inner.contains(end)) {
    const auto clip = clip_segment_aabb(start, b, inner);
    if (!clip) return;
    end = start + clip->second * (b - start);
  }
  traverse_voxels(origin_, resolution_, start, end, [&](const Eigen::Vector3i& idx) {
    if (in_bounds(idx) && at(idx) != Voxel::Occupied) set(idx, Voxel::Free);
    return true;
  });
}

bool VoxelGrid::is_cuboid_free(const Vec3& center, const Vec3& half_extents,
                               TreatUnknown treat_unknown) const {
  if (half_extents.minCoeff() <= 0.0)
    throw std::invalid_argument("is_cuboid_free: half extents must be positive");
  const Vec3 lo = center - half_extents;
  const Vec3 hi = center + half_extents;
  const bool unknown_blocks = treat_unknown == TreatUnknown::Occupied;

  Eigen::Vector3i i0 = voxel_of(lo);
  Eigen::Vector3i i1 = voxel_of(hi);
  bool outside = false;
  for (int i = 0; i < 3; ++i) {
    if (i0[i] < 0) {
      i0[i] = 0;
      outside = true;
    }
    if (i1[i] >= dims_[i]) {
      i1[i] = dims_[i] - 1;
      outside = true;
    }
    if (i0[i] > i1[i]) return !unknown_blocks;  // entirely outside the grid
  }
  if (outside && unknown_blocks) return false;

  for (int z = i0.z(); z <= i1.z(); ++z)
    for (int y = i0.y(); y <= i1.y(); ++y) {
      const std::size_t row = (static_cast<std::size_t>(z) * dims_.y() + y) * dims_.x();
      for (int x = i0.x(); x <= i1.x(); ++x) {
        const Voxel v = cells_[row + x];
        if (v == Voxel::Occupied) return false;
        if (unknown_blocks && v == Voxel::Unknown) return false;
      }
    }
  return true;
}

void VoxelGrid::dump(std::ostream& os) const {
  for (int z = 0; z < dims_.z(); ++z)
    for (int y = 0; y < dims_.y(); ++y)
      for (int x = 0; x < dims_.x(); ++x) {
        const Voxel v = at({x, y, z});
        if (v == Voxel::Unknown) continue;
        os << x << ' ' << y << ' ' << z << ' '
           << (v == Voxel::Free ? "free" : "occupied") << '\n';
      }
}

std::size_t VoxelGrid::count(Voxel v) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), v));
}

}  // namespace spraysim
