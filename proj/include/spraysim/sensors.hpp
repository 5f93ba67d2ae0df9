#pragma once

#include "spraysim/geometry.hpp"
#include "spraysim/scene.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace spraysim {

// Pinhole depth camera, D435-flavored defaults (480x640 at ~87x58 deg).
// Camera frame: x forward along the vehicle heading, y left, z up. Pixel u
// grows to the right, v grows downward.
struct CameraIntrinsics {
  int width = 640;
  int height = 480;
  double hfov = 1.518;  // rad
  double vfov = 1.012;  // rad
  double max_range = 6.0;

  double fx() const { return 0.5 * width / std::tan(0.5 * hfov); }
  double fy() const { return 0.5 * height / std::tan(0.5 * vfov); }
  double cx() const { return 0.5 * (width - 1); }
  double cy() const { return 0.5 * (height - 1); }

  // Same field of view at reduced resolution; the mission loop renders
  // through this to trade pixels for speed.
  CameraIntrinsics downscaled(int factor) const {
    CameraIntrinsics out = *this;
    out.width = std::max(1, width / factor);
    out.height = std::max(1, height / factor);
    return out;
  }
};

inline constexpr float kNoReturn = std::numeric_limits<float>::infinity();

struct DepthImage {
  int width = 0;
  int height = 0;
  CameraIntrinsics intrinsics;
  Pose capture_pose;  // world pose of the camera frame at capture
  std::vector<float> depth;  // row-major; kNoReturn where the ray missed

  float at(int row, int col) const { return depth[row * width + col]; }
  bool has_return(int row, int col) const { return std::isfinite(at(row, col)); }
};

// Unit ray direction of pixel (row, col) in the camera frame.
inline Vec3 pixel_ray(const CameraIntrinsics& intr, double row, double col) {
  const Vec3 d{1.0, -(col - intr.cx()) / intr.fx(), -(row - intr.cy()) / intr.fy()};
  return d.normalized();
}

// World point of a pixel given its depth measured along the ray.
inline Vec3 unproject(const DepthImage& img, int row, int col, double depth) {
  return img.capture_pose.position +
         img.capture_pose.rotation() * (depth * pixel_ray(img.intrinsics, row, col));
}

struct SensorNoise {
  double depth_std = 0.01;             // m, range-independent
  double pos_std = 0.003;              // m per axis (tracking camera)
  double yaw_std = 0.004;              // rad
  double detect_false_negative = 0.05; // per object per frame
  double bbox_jitter_px = 3.0;         // std of box-edge jitter

  static SensorNoise zero() { return {0.0, 0.0, 0.0, 0.0, 0.0}; }
};

enum class DetectionClass { Door, Handle };

struct Detection {
  DetectionClass cls = DetectionClass::Door;
  double u_min = 0.0, v_min = 0.0, u_max = 0.0, v_max = 0.0;  // pixels
  // Ground-truth association, used only by the simulator's bookkeeping and
  // evaluator, never by the perception math.
  std::string target_id;

  double u_center() const { return 0.5 * (u_min + u_max); }
  double v_center() const { return 0.5 * (v_min + v_max); }
  bool contains(double u, double v) const {
    return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
  }
};

using PointCloud = std::vector<Vec3>;

// Ray-cast depth image: each pixel holds the distance to the nearest scene
// surface along its ray plus Gaussian noise, clamped to (0, max_range];
// misses get kNoReturn. Deterministic in (scene, pose, intrinsics, noise,
// seed).
DepthImage render_depth(const SceneModel& scene, const Pose& camera,
                        const CameraIntrinsics& intr, const SensorNoise& noise,
                        std::uint64_t seed);

// Inverse pinhole projection of every stride-th pixel with a finite depth,
// transformed to the world frame by the capture pose.
PointCloud depth_to_pointcloud(const DepthImage& img, int stride);

// Oracle detector standing in for the learned model: emits the projected
// bounding box of every door/handle whose center is in the frustum, within
// range, and unoccluded; boxes are jittered and detections dropped per the
// configured noise. A handle is only reported alongside its parent door.
std::vector<Detection> detect(const SceneModel& scene, const Pose& camera,
                              const CameraIntrinsics& intr, const SensorNoise& noise,
                              double max_detect_range, std::uint64_t seed);

// Tracking-camera surrogate: true pose perturbed by zero-mean Gaussians.
Pose pose_estimate(const Pose& true_pose, const SensorNoise& noise, std::uint64_t seed);

}  // namespace spraysim
