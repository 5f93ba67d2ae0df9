#pragma once

#include "spraysim/geometry.hpp"
#include "spraysim/mapping.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace spraysim {

struct PlannerParams {
  int max_iterations = 5000;
  double step_size = 0.3;        // m
  double goal_bias = 0.1;        // probability of sampling the goal
  double rewire_radius = 1.0;    // m
  double goal_tolerance = 0.15;  // m
  std::uint64_t seed = 0;

  // Sampling region; when invalid (default) the grid's world box is used.
  Aabb sample_bounds{{1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}};

  // Unknown voxels whose centers lie within this radius of the plan start
  // count as free; the vehicle is allowed to sit in space it has not yet
  // observed around itself, which otherwise deadlocks takeoff.
  double unknown_free_radius = 0.0;

  // When true, iteration stops at the first tree node inside the goal
  // tolerance instead of spending the full budget on rewiring.
  bool terminate_on_goal = false;
};

struct Path {
  std::vector<Vec3> waypoints;

  double length() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i)
      sum += (waypoints[i] - waypoints[i - 1]).norm();
    return sum;
  }
  bool empty() const { return waypoints.empty(); }
};

enum class PlanStatus { Success, StartInCollision, NoPathFound };

struct PlanResult {
  PlanStatus status = PlanStatus::NoPathFound;
  Path path;
  double cost = std::numeric_limits<double>::infinity();

  bool ok() const { return status == PlanStatus::Success; }
};

// Collision predicate shared by the planner, the mission layer, and path
// re-validation: the vehicle cuboid must not overlap Occupied voxels, and
// Unknown counts as occupied except within `unknown_free_radius` of
// `lenient_center`.
bool cuboid_free_lenient(const VoxelGrid& grid, const Vec3& center,
                         const Vec3& half_extents, const Vec3& lenient_center,
                         double unknown_free_radius);

// Dense edge check at <= 0.5 * resolution spacing, endpoints included.
bool segment_free(const VoxelGrid& grid, const Vec3& a, const Vec3& b,
                  const Vec3& half_extents, const Vec3& lenient_center,
                  double unknown_free_radius);

bool path_free(const VoxelGrid& grid, const Path& path, const Vec3& half_extents,
               const Vec3& lenient_center, double unknown_free_radius);

// RRT*: goal-biased uniform sampling, fixed-radius rewiring, cuboid
// collision model against the voxel grid. Deterministic in (grid, inputs,
// params.seed), and the sample stream does not depend on the iteration
// budget, so runs with different budgets share a prefix.
PlanResult plan_path(const VoxelGrid& grid, const Vec3& start, const Vec3& goal,
                     const Vec3& vehicle_half_extents, const PlannerParams& params);

// Random-pair shortcutting followed by a deterministic collinear merge.
// Output keeps the endpoints, stays collision-free, and never gets longer.
// Zero attempts returns the input unchanged.
Path simplify_path(const VoxelGrid& grid, const Path& path,
                   const Vec3& vehicle_half_extents, std::uint64_t seed, int attempts,
                   double unknown_free_radius = 0.0);

}  // namespace spraysim
