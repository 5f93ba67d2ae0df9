#include "spraysim/planning.hpp"

#include "spraysim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spraysim {

bool cuboid_free_lenient(const VoxelGrid& grid, const Vec3& center,
                         const Vec3& half_extents, const Vec3& lenient_center,
                         double unknown_free_radius) {
  if (unknown_free_radius <= 0.0)
    return grid.is_cuboid_free(center, half_extents, TreatUnknown::Occupied);

  const Vec3 lo = center - half_extents;
  const Vec3 hi = center + half_extents;
  Eigen::Vector3i i0 = grid.voxel_of(lo);
  Eigen::Vector3i i1 = grid.voxel_of(hi);
  const auto& dims = grid.dims();
  for (int i = 0; i < 3; ++i) {
    if (i0[i] < 0 || i1[i] >= dims[i]) return false;  // outside the map
  }
  const double r2 = unknown_free_radius * unknown_free_radius;
  for (int z = i0.z(); z <= i1.z(); ++z)
    for (int y = i0.y(); y <= i1.y(); ++y)
      for (int x = i0.x(); x <= i1.x(); ++x) {
        const Eigen::Vector3i idx{x, y, z};
        const Voxel v = grid.at(idx);
        if (v == Voxel::Occupied) return false;
        if (v == Voxel::Unknown &&
            (grid.voxel_center(idx) - lenient_center).squaredNorm() > r2)
          return false;
      }
  return true;
}

bool segment_free(const VoxelGrid& grid, const Vec3& a, const Vec3& b,
                  const Vec3& half_extents, const Vec3& lenient_center,
                  double unknown_free_radius) {
  const double len = (b - a).norm();
  const int n = std::max(1, static_cast<int>(std::ceil(len / (0.5 * grid.resolution()))));
  for (int i = 0; i <= n; ++i) {
    const Vec3 p = a + (static_cast<double>(i) / n) * (b - a);
    if (!cuboid_free_lenient(grid, p, half_extents, lenient_center, unknown_free_radius))
      return false;
  }
  return true;
}

bool path_free(const VoxelGrid& grid, const Path& path, const Vec3& half_extents,
               const Vec3& lenient_center, double unknown_free_radius) {
  if (path.waypoints.empty()) return false;
  if (path.waypoints.size() == 1)
    return cuboid_free_lenient(grid, path.waypoints[0], half_extents, lenient_center,
                               unknown_free_radius);
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    if (!segment_free(grid, path.waypoints[i - 1], path.waypoints[i], half_extents,
                      lenient_center, unknown_free_radius))
      return false;
  return true;
}

namespace {

struct Tree {
  std::vector<Vec3> position;
  std::vector<int> parent;
  std::vector<double> cost;
  std::vector<std::vector<int>> children;

  int add(const Vec3& p, int par, double c) {
    position.push_back(p);
    parent.push_back(par);
    cost.push_back(c);
    children.emplace_back();
    const int idx = static_cast<int>(position.size()) - 1;
    if (par >= 0) children[par].push_back(idx);
    return idx;
  }

  void reparent(int node, int new_parent, double new_cost) {
    auto& sib = children[parent[node]];
    sib.erase(std::find(sib.begin(), sib.end(), node));
    parent[node] = new_parent;
    children[new_parent].push_back(node);
    const double delta = new_cost - cost[node];
    // Propagate so stored costs stay exact under rewiring.
    std::vector<int> stack{node};
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      cost[n] += delta;
      for (int c : children[n]) stack.push_back(c);
    }
  }
};

}  // namespace

PlanResult plan_path(const VoxelGrid& grid, const Vec3& start, const Vec3& goal,
                     const Vec3& vehicle_half_extents, const PlannerParams& params) {
  PlanResult result;
  const Vec3& he = vehicle_half_extents;
  const double lenient_r = params.unknown_free_radius;

  if (!cuboid_free_lenient(grid, start, he, start, lenient_r)) {
    result.status = PlanStatus::StartInCollision;
    return result;
  }

  const Aabb sample_box = params.sample_bounds.valid() &&
                                  (params.sample_bounds.extents().minCoeff() > 0.0)
                              ? params.sample_bounds
                              : grid.world_box();

  Tree tree;
  tree.add(start, -1, 0.0);

  Rng rng(params.seed);
  bool goal_reached = false;

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    // Draw order is fixed per iteration so different budgets share a
    // sample-stream prefix.
    Vec3 sample;
    if (rng.uniform() < params.goal_bias) {
      sample = goal;
    } else {
      sample.x() = rng.uniform(sample_box.min.x(), sample_box.max.x());
      sample.y() = rng.uniform(sample_box.min.y(), sample_box.max.y());
      sample.z() = rng.uniform(sample_box.min.z(), sample_box.max.z());
    }

    // Nearest node (linear scan; desk-scale trees).
    int nearest = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tree.position.size(); ++i) {
      const double d2 = (tree.position[i] - sample).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        nearest = static_cast<int>(i);
      }
    }

    const Vec3 from = tree.position[nearest];
    const double dist = std::sqrt(best_d2);
    if (dist < 1e-9) continue;
    const Vec3 new_p =
        dist <= params.step_size ? sample : from + (params.step_size / dist) * (sample - from);

    if (!cuboid_free_lenient(grid, new_p, he, start, lenient_r)) continue;

    // Candidate parents within the rewire radius, cheapest connection first.
    const double r2 = params.rewire_radius * params.rewire_radius;
    std::vector<std::pair<double, int>> candidates;  // (cost through, node)
    for (std::size_t i = 0; i < tree.position.size(); ++i) {
      const double d2 = (tree.position[i] - new_p).squaredNorm();
      if (d2 <= r2)
        candidates.emplace_back(tree.cost[i] + std::sqrt(d2), static_cast<int>(i));
    }
    if (candidates.empty())
      candidates.emplace_back(tree.cost[nearest] + (new_p - from).norm(), nearest);
    std::sort(candidates.begin(), candidates.end());

    int parent = -1;
    double new_cost = 0.0;
    for (const auto& [through, node] : candidates) {
      if (segment_free(grid, tree.position[node], new_p, he, start, lenient_r)) {
        parent = node;
        new_cost = through;
        break;
      }
    }
    if (parent < 0) continue;

    const int node = tree.add(new_p, parent, new_cost);

    // Rewire neighbors whose cost improves through the new node.
    for (const auto& [through, nb] : candidates) {
      if (nb == parent) continue;
      const double alt = new_cost + (tree.position[nb] - new_p).norm();
      if (alt + 1e-12 < tree.cost[nb] &&
          segment_free(grid, new_p, tree.position[nb], he, start, lenient_r))
        tree.reparent(nb, node, alt);
    }

    if ((new_p - goal).norm() <= params.goal_tolerance) {
      goal_reached = true;
      if (params.terminate_on_goal) break;
    }
  }

  if (!goal_reached) {
    result.status = PlanStatus::NoPathFound;
    return result;
  }

  int best = -1;
  for (std::size_t i = 0; i < tree.position.size(); ++i) {
    if ((tree.position[i] - goal).norm() > params.goal_tolerance) continue;
    if (best < 0 || tree.cost[i] < tree.cost[best]) best = static_cast<int>(i);
  }

  std::vector<Vec3> waypoints;
  for (int n = best; n >= 0; n = tree.parent[n]) waypoints.push_back(tree.position[n]);
  std::reverse(waypoints.begin(), waypoints.end());

  result.status = PlanStatus::Success;
  result.path.waypoints = std::move(waypoints);
  result.cost = result.path.length();
  return result;
}

Path simplify_path(const VoxelGrid& grid, const Path& path,
                   const Vec3& vehicle_half_extents, std::uint64_t seed, int attempts,
                   double unknown_free_radius) {
  if (attempts <= 0 || path.waypoints.size() < 3) return path;
  const Vec3 lenient_center = path.waypoints.front();

  std::vector<Vec3> wp = path.waypoints;
  Rng rng(seed);
  for (int a = 0; a < attempts; ++a) {
    const int n = static_cast<int>(wp.size());
    if (n < 3) break;
    const int i = rng.uniform_int(0, n - 3);
    const int j = rng.uniform_int(i + 2, n - 1);
    if (segment_free(grid, wp[i], wp[j], vehicle_half_extents, lenient_center,
                     unknown_free_radius))
      wp.erase(wp.begin() + i + 1, wp.begin() + j);
  }

  // Drop waypoints that no longer bend the path.
  std::vector<Vec3> out;
  out.push_back(wp.front());
  for (std::size_t i = 1; i + 1 < wp.size(); ++i) {
    const double direct = (wp[i + 1] - out.back()).norm();
    const double via = (wp[i] - out.back()).norm() + (wp[i + 1] - wp[i]).norm();
    if (via - direct < 1e-9 &&
        segment_free(grid, out.back(), wp[i + 1], vehicle_half_extents, lenient_center,
                     unknown_free_radius))
      continue;
    out.push_back(wp[i]);
  }
  out.push_back(wp.back());

  Path simplified;
  simplified.waypoints = std::move(out);
  return simplified;
}

}  // namespace spraysim
