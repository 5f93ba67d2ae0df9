// Shared fixtures and independent oracles for the test suites. Everything
// here deliberately re-derives results through a different route than the
// library code it checks.
#pragma once

#include "spraysim/mapping.hpp"
#include "spraysim/planning.hpp"
#include "spraysim/rng.hpp"
#include "spraysim/scene.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <vector>

namespace testsupport {

using namespace spraysim;

// A single large wall whose inner face is the plane x = wall_x, facing -x.
inline SceneModel wall_scene(double wall_x = 1.0) {
  SceneModel scene;
  scene.bounds = {{-10.0, -10.0, -10.0}, {wall_x + 1.0, 10.0, 10.0}};
  scene.obstacles.push_back({{wall_x, -10.0, -10.0}, {wall_x + 1.0, 10.0, 10.0}});
  scene.finalize();
  return scene;
}

// Door + handle mounted on a wall at y = -2, facing +y, nothing else.
inline SceneModel door_scene() {
  SceneModel scene;
  scene.bounds = {{-10.0, -3.0, -1.0}, {10.0, 10.0, 4.0}};
  scene.obstacles.push_back({{-10.0, -3.0, -1.0}, {10.0, -2.0, 4.0}});
  DoorSpec door;
  door.id = "door0";
  door.center = {0.0, -2.0, 1.0};
  door.width = 0.9;
  door.height = 2.0;
  door.normal = {0.0, 1.0, 0.0};
  scene.doors.push_back(door);
  HandleSpec handle;
  handle.name = "handle0";
  handle.door = "door0";
  handle.center = {0.25, -1.94, 1.0};
  handle.extents = {0.12, 0.04, 0.04};
  handle.protrusion = 0.06;
  scene.handles.push_back(handle);
  scene.finalize();
  return scene;
}

struct IdxLess {
  bool operator()(const Eigen::Vector3i& a, const Eigen::Vector3i& b) const {
    if (a.x() != b.x()) return a.x() < b.x();
    if (a.y() != b.y()) return a.y() < b.y();
    return a.z() < b.z();
  }
};
using IdxSet = std::set<Eigen::Vector3i, IdxLess>;

// Dense-sampling oracle: voxels touched by samples along the segment at
// 0.01-resolution spacing. A subset of the exact traversal by construction.
inline IdxSet sampled_voxels(const Vec3& origin, double resolution, const Vec3& a,
                             const Vec3& b) {
  IdxSet out;
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / (0.01 * resolution))));
  for (int i = 0; i <= n; ++i) {
    const Vec3 p = a + (static_cast<double>(i) / n) * (b - a);
    const Vec3 r = (p - origin) / resolution;
    out.insert({static_cast<int>(std::floor(r.x())), static_cast<int>(std::floor(r.y())),
                static_cast<int>(std::floor(r.z()))});
  }
  return out;
}

// Exact-geometry check that a voxel's closed box meets the segment (slab
// clip), used as the soundness side of the traversal sandwich.
inline bool segment_touches_voxel(const Vec3& origin, double resolution, const Vec3& a,
                                  const Vec3& b, const Eigen::Vector3i& idx) {
  const Vec3 lo = origin + resolution * idx.cast<double>();
  const Aabb box{lo, lo + Vec3(resolution, resolution, resolution)};
  return clip_segment_aabb(a, b, box).has_value();
}

// 6-connected BFS over voxel centers using the same cuboid predicate as the
// planner. With box obstacles aligned to voxel boundaries and a vehicle no
// larger than one voxel, connectivity of this graph matches continuous
// cuboid connectivity, so it is a sound reachability oracle for RRT*.
inline bool bfs_reachable(const VoxelGrid& grid, const Vec3& start, const Vec3& goal,
                          const Vec3& half_extents) {
  const Eigen::Vector3i s = grid.voxel_of(start);
  const Eigen::Vector3i g = grid.voxel_of(goal);
  if (!grid.in_bounds(s) || !grid.in_bounds(g)) return false;
  auto free_at = [&](const Eigen::Vector3i& idx) {
    return grid.in_bounds(idx) &&
           grid.is_cuboid_free(grid.voxel_center(idx), half_extents,
                               TreatUnknown::Occupied);
  };
  if (!free_at(s) || !free_at(g)) return false;

  IdxSet visited;
  std::queue<Eigen::Vector3i> frontier;
  frontier.push(s);
  visited.insert(s);
  const Eigen::Vector3i steps[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                    {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  while (!frontier.empty()) {
    const Eigen::Vector3i cur = frontier.front();
    frontier.pop();
    if (cur == g) return true;
    for (const auto& d : steps) {
      const Eigen::Vector3i next = cur + d;
      if (visited.count(next) || !free_at(next)) continue;
      visited.insert(next);
      frontier.push(next);
    }
  }
  return false;
}

// Independent dense re-check of a returned path (re-implemented here rather
// than calling the planner's internal edge checker).
inline bool path_densely_collision_free(const VoxelGrid& grid, const Path& path,
                                        const Vec3& half_extents,
                                        bool unknown_blocks = true) {
  if (path.waypoints.empty()) return false;
  const TreatUnknown treat =
      unknown_blocks ? TreatUnknown::Occupied : TreatUnknown::Free;
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const Vec3& a = path.waypoints[i];
    const Vec3& b = path.waypoints[i + 1];
    const double len = (b - a).norm();
    const int n =
        std::max(1, static_cast<int>(std::ceil(len / (0.5 * grid.resolution()))));
    for (int k = 0; k <= n; ++k) {
      const Vec3 p = a + (static_cast<double>(k) / n) * (b - a);
      if (!grid.is_cuboid_free(p, half_extents, treat)) return false;
    }
  }
  return true;
}

// True-pose safety oracle: vehicle box vs ground-truth scene obstacles.
inline bool pose_hits_scene(const SceneModel& scene, const Pose& pose,
                            const Vec3& half_extents) {
  const Aabb vehicle{pose.position - half_extents, pose.position + half_extents};
  for (const auto& o : scene.obstacles)
    if (vehicle.intersects(o)) return true;
  return false;
}

// Random occupied-box maps for the planner-oracle equivalence battery. All
// non-box voxels are Free (fully observed world).
inline VoxelGrid random_box_map(Rng& rng, const Eigen::Vector3i& dims, double res,
                                int n_boxes) {
  VoxelGrid grid(Aabb{{0.0, 0.0, 0.0},
                      {dims.x() * res, dims.y() * res, dims.z() * res}},
                 res);
  for (int z = 0; z < dims.z(); ++z)
    for (int y = 0; y < dims.y(); ++y)
      for (int x = 0; x < dims.x(); ++x) grid.set({x, y, z}, Voxel::Free);
  for (int b = 0; b < n_boxes; ++b) {
    const int x0 = rng.uniform_int(0, dims.x() - 1);
    const int y0 = rng.uniform_int(0, dims.y() - 1);
    const int z0 = rng.uniform_int(0, dims.z() - 1);
    const int sx = rng.uniform_int(1, std::max(1, dims.x() / 3));
    const int sy = rng.uniform_int(1, std::max(1, dims.y() / 3));
    const int sz = rng.uniform_int(1, dims.z());
    for (int z = z0; z < std::min(dims.z(), z0 + sz); ++z)
      for (int y = y0; y < std::min(dims.y(), y0 + sy); ++y)
        for (int x = x0; x < std::min(dims.x(), x0 + sx); ++x)
          grid.set({x, y, z}, Voxel::Occupied);
  }
  return grid;
}

}  // namespace testsupport
