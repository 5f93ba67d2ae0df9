#pragma once

#include "spraysim/geometry.hpp"
#include "spraysim/sensors.hpp"

#include <cstdint>
#include <deque>
#include <optional>

namespace spraysim {

// Plane {x : n.x = d} with the normal oriented toward the sensor.
struct Plane {
  Vec3 normal{1.0, 0.0, 0.0};
  double d = 0.0;
  int inlier_count = 0;

  double signed_distance(const Vec3& p) const { return normal.dot(p) - d; }
  Vec3 project(const Vec3& p) const { return p - signed_distance(p) * normal; }
};

struct RansacParams {
  double inlier_threshold = 0.02;  // m
  int iterations = 200;
  double min_inlier_fraction = 0.5;
  std::uint64_t seed = 0;
};

struct HandleEstimate {
  Vec3 position{0.0, 0.0, 0.0};
  Plane door_plane;
  int point_count = 0;
};

struct SprayPose {
  Vec3 nozzle_position{0.0, 0.0, 0.0};
  Vec3 heading{1.0, 0.0, 0.0};  // horizontal unit vector
  Pose vehicle;
};

struct SegmentedRegions {
  PointCloud handle_cloud;
  PointCloud door_cloud;
  bool handle_empty = false;
  bool door_empty = false;
};

// Splits the depth image into handle and door clouds using the detection
// boxes: handle cloud from pixels inside the handle box, door cloud from
// pixels inside the door box but outside the handle box. Requires at least
// one door and one handle detection with the handle centered inside a door
// box.
SegmentedRegions segment_regions(const DepthImage& img,
                                 const std::vector<Detection>& detections, int stride);

// RANSAC plane fit: random 3-point hypotheses, best inlier count wins, then
// a least-squares refit on the winning inliers. Fails (nullopt) when the
// best inlier fraction is below the configured minimum. The normal is
// oriented toward the sensor.
std::optional<Plane> fit_door_plane(const PointCloud& door_cloud,
                                    const Vec3& sensor_origin, const RansacParams& params);

// Projects the cloud centroid onto the door plane, then offsets it
// `handle_offset` meters back along the normal to account for the handle's
// protrusion from the door face.
HandleEstimate localize_handle(const PointCloud& handle_cloud, const Plane& plane,
                               double handle_offset);

// Nozzle target `standoff` meters from the handle along the horizontal
// projection of the door normal, heading back at the door; the vehicle pose
// is derived through the nozzle's rigid offset in the body frame.
SprayPose compute_spray_pose(const HandleEstimate& estimate, double standoff,
                             const Vec3& nozzle_offset);

// Robust multi-frame average of handle estimates: estimates farther than
// `reject_radius` from the running mean are dropped; the pose is committed
// once `stable_count` estimates agree. A sliding window keeps the fused
// value tracking the most recent views.
class HandleFuser {
 public:
  HandleFuser(int stable_count = 5, double reject_radius = 0.3, int window = 5)
      : stable_count_(stable_count), reject_radius_(reject_radius), window_(window) {}

  void add(const HandleEstimate& estimate);
  bool stable() const { return accepted_total_ >= stable_count_; }
  int accepted_total() const { return accepted_total_; }
  std::optional<HandleEstimate> fused(double handle_offset) const;

 private:
  int stable_count_;
  double reject_radius_;
  int window_;
  int accepted_total_ = 0;
  std::deque<HandleEstimate> recent_;
};

}  // namespace spraysim
