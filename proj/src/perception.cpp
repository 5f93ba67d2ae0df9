#include "spraysim/perception.hpp"

#include "spraysim/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spraysim {

SegmentedRegions segment_regions(const DepthImage& img,
                                 const std::vector<Detection>& detections, int stride) {
  if (stride < 1) throw std::invalid_argument("segment_regions: stride must be >= 1");

  const Detection* handle = nullptr;
  for (const auto& d : detections)
    if (d.cls == DetectionClass::Handle) {
      handle = &d;
      break;
    }
  if (!handle) throw std::invalid_argument("segment_regions: no handle detection");

  const Detection* door = nullptr;
  for (const auto& d : detections)
    if (d.cls == DetectionClass::Door &&
        d.contains(handle->u_center(), handle->v_center())) {
      door = &d;
      break;
    }
  if (!door)
    throw std::invalid_argument(
        "segment_regions: handle box center not inside any door box");

  SegmentedRegions out;
  const int v0 = std::max(0, static_cast<int>(std::ceil(door->v_min)));
  const int v1 = std::min(img.height - 1, static_cast<int>(std::floor(door->v_max)));
  const int u0 = std::max(0, static_cast<int>(std::ceil(door->u_min)));
  const int u1 = std::min(img.width - 1, static_cast<int>(std::floor(door->u_max)));
  for (int v = v0; v <= v1; v += stride)
    for (int u = u0; u <= u1; u += stride) {
      if (!img.has_return(v, u)) continue;
      const Vec3 p = unproject(img, v, u, img.at(v, u));
      if (handle->contains(u, v)) out.handle_cloud.push_back(p);
      else out.door_cloud.push_back(p);
    }
  out.handle_empty = out.handle_cloud.empty();
  out.door_empty = out.door_cloud.empty();
  return out;
}

std::optional<Plane> fit_door_plane(const PointCloud& cloud, const Vec3& sensor_origin,
                                    const RansacParams& params) {
  const int n = static_cast<int>(cloud.size());
  if (n < 3) throw std::invalid_argument("fit_door_plane: needs at least 3 points");

  Rng rng(params.seed);
  Vec3 best_normal{0.0, 0.0, 0.0};
  double best_d = 0.0;
  int best_inliers = -1;

  for (int it = 0; it < params.iterations; ++it) {
    const int i = rng.uniform_int(0, n - 1);
    const int j = rng.uniform_int(0, n - 1);
    const int k = rng.uniform_int(0, n - 1);
    if (i == j || j == k || i == k) continue;
    Vec3 normal = (cloud[j] - cloud[i]).cross(cloud[k] - cloud[i]);
    const double len = normal.norm();
    if (len < 1e-12) continue;  // collinear sample, skip
    normal /= len;
    const double d = normal.dot(cloud[i]);

    int inliers = 0;
    for (const Vec3& p : cloud)
      if (std::abs(normal.dot(p) - d) <= params.inlier_threshold) ++inliers;
    if (inliers > best_inliers) {
      best_inliers = inliers;
      best_normal = normal;
      best_d = d;
    }
  }

  if (best_inliers < std::max(3.0, params.min_inlier_fraction * n)) return std::nullopt;

  // Least-squares refit on the consensus set.
  Vec3 centroid{0.0, 0.0, 0.0};
  std::vector<const Vec3*> inliers;
  inliers.reserve(best_inliers);
  for (const Vec3& p : cloud)
    if (std::abs(best_normal.dot(p) - best_d) <= params.inlier_threshold) {
      inliers.push_back(&p);
      centroid += p;
    }
  centroid /= static_cast<double>(inliers.size());

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec3* p : inliers) {
    const Vec3 q = *p - centroid;
    cov += q * q.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  Vec3 normal = eig.eigenvectors().col(0);  // smallest eigenvalue
  normal.normalize();
  double d = normal.dot(centroid);

  if (normal.dot(sensor_origin - centroid) < 0.0) {
    normal = -normal;
    d = -d;
  }

  Plane plane;
  plane.normal = normal;
  plane.d = d;
  plane.inlier_count = 0;
  for (const Vec3& p : cloud)
    if (std::abs(plane.signed_distance(p)) <= params.inlier_threshold)
      ++plane.inlier_count;
  return plane;
}

HandleEstimate localize_handle(const PointCloud& handle_cloud, const Plane& plane,
                               double handle_offset) {
  if (handle_cloud.empty())
    throw std::invalid_argument("localize_handle: empty handle cloud");
  Vec3 centroid{0.0, 0.0, 0.0};
  for (const Vec3& p : handle_cloud) centroid += p;
  centroid /= static_cast<double>(handle_cloud.size());

  HandleEstimate est;
  est.position = plane.project(centroid) + handle_offset * plane.normal;
  est.door_plane = plane;
  est.point_count = static_cast<int>(handle_cloud.size());
  return est;
}

SprayPose compute_spray_pose(const HandleEstimate& estimate, double standoff,
                             const Vec3& nozzle_offset) {
  if (standoff <= 0.0) throw std::invalid_argument("compute_spray_pose: standoff must be > 0");
  Vec3 horizontal{estimate.door_plane.normal.x(), estimate.door_plane.normal.y(), 0.0};
  if (horizontal.norm() < 0.1)
    throw std::invalid_argument("compute_spray_pose: door normal is near vertical");
  horizontal.normalize();

  SprayPose pose;
  pose.nozzle_position = estimate.position + standoff * horizontal;
  pose.heading = -horizontal;
  pose.vehicle.yaw = yaw_from_direction(pose.heading);
  pose.vehicle.position =
      pose.nozzle_position - pose.vehicle.rotation() * nozzle_offset;
  return pose;
}

void HandleFuser::add(const HandleEstimate& estimate) {
  if (!recent_.empty()) {
    Vec3 mean{0.0, 0.0, 0.0};
    for (const auto& e : recent_) mean += e.position;
    mean /= static_cast<double>(recent_.size());
    if ((estimate.position - mean).norm() > reject_radius_) return;
  }
  recent_.push_back(estimate);
  if (static_cast<int>(recent_.size()) > window_) recent_.pop_front();
  ++accepted_total_;
}

std::optional<HandleEstimate> HandleFuser::fused(double handle_offset) const {
  if (recent_.empty()) return std::nullopt;
  Vec3 mean_pos{0.0, 0.0, 0.0};
  Vec3 mean_normal{0.0, 0.0, 0.0};
  Vec3 mean_on_plane{0.0, 0.0, 0.0};
  for (const auto& e : recent_) {
    mean_pos += e.position;
    mean_normal += e.door_plane.normal;
    mean_on_plane += e.position - handle_offset * e.door_plane.normal;
  }
  const double n = static_cast<double>(recent_.size());
  mean_pos /= n;
  mean_on_plane /= n;
  if (mean_normal.norm() < 1e-9) return std::nullopt;
  mean_normal.normalize();

  Plane plane;
  plane.normal = mean_normal;
  plane.d = mean_normal.dot(mean_on_plane);
  plane.inlier_count = recent_.back().door_plane.inlier_count;

  HandleEstimate fused;
  fused.door_plane = plane;
  // Re-impose the exact-offset invariant on the averaged position.
  fused.position = plane.project(mean_pos) + handle_offset * plane.normal;
  fused.point_count = recent_.back().point_count;
  return fused;
}

}  // namespace spraysim
