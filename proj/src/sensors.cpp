#include "spraysim/sensors.hpp"

#include "spraysim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spraysim {

DepthImage render_depth(const SceneModel& scene, const Pose& camera,
                        const CameraIntrinsics& intr, const SensorNoise& noise,
                        std::uint64_t seed) {
  DepthImage img;
  img.width = intr.width;
  img.height = intr.height;
  img.intrinsics = intr;
  img.capture_pose = camera;
  img.depth.assign(static_cast<std::size_t>(intr.width) * intr.height, kNoReturn);

  const Eigen::Matrix3d rot = camera.rotation();
  Rng rng(seed);
  // Noise is drawn per hit pixel in row-major order; misses consume none.
  for (int v = 0; v < intr.height; ++v) {
    for (int u = 0; u < intr.width; ++u) {
      const Vec3 dir = rot * pixel_ray(intr, v, u);
      const auto hit = scene.raycast(camera.position, dir, intr.max_range);
      if (!hit) continue;
      double d = hit->t + rng.gaussian(noise.depth_std);
      d = std::clamp(d, 1e-6, intr.max_range);
      img.depth[static_cast<std::size_t>(v) * intr.width + u] = static_cast<float>(d);
    }
  }
  return img;
}

PointCloud depth_to_pointcloud(const DepthImage& img, int stride) {
  if (stride < 1) throw std::invalid_argument("depth_to_pointcloud: stride must be >= 1");
  PointCloud cloud;
  cloud.reserve(static_cast<std::size_t>((img.width / stride + 1)) *
                (img.height / stride + 1));
  for (int v = 0; v < img.height; v += stride)
    for (int u = 0; u < img.width; u += stride)
      if (img.has_return(v, u)) cloud.push_back(unproject(img, v, u, img.at(v, u)));
  return cloud;
}

namespace {

struct ProjectedBox {
  double u_min, v_min, u_max, v_max;
};

// Projects a world point into pixel coordinates; nullopt when at or behind
// the camera plane.
std::optional<std::pair<double, double>> project(const Eigen::Matrix3d& rot_t,
                                                 const Vec3& cam_pos,
                                                 const CameraIntrinsics& intr,
                                                 const Vec3& p) {
  const Vec3 local = rot_t * (p - cam_pos);
  if (local.x() < 1e-6) return std::nullopt;
  const double u = intr.cx() - intr.fx() * local.y() / local.x();
  const double v = intr.cy() - intr.fy() * local.z() / local.x();
  return std::make_pair(u, v);
}

std::optional<ProjectedBox> project_corners(const Eigen::Matrix3d& rot_t,
                                            const Vec3& cam_pos,
                                            const CameraIntrinsics& intr,
                                            const std::vector<Vec3>& corners) {
  ProjectedBox box{1e30, 1e30, -1e30, -1e30};
  for (const Vec3& c : corners) {
    const auto uv = project(rot_t, cam_pos, intr, c);
    if (!uv) return std::nullopt;  // straddling the camera plane
    box.u_min = std::min(box.u_min, uv->first);
    box.v_min = std::min(box.v_min, uv->second);
    box.u_max = std::max(box.u_max, uv->first);
    box.v_max = std::max(box.v_max, uv->second);
  }
  return box;
}

bool center_visible(const SceneModel& scene, const Vec3& cam_pos,
                    const CameraIntrinsics& intr, double max_detect_range,
                    const Eigen::Matrix3d& rot_t, const Vec3& center,
                    SceneHit::Kind self_kind, int self_index) {
  const double dist = (center - cam_pos).norm();
  if (dist < 1e-6 || dist > max_detect_range) return false;
  const auto uv = project(rot_t, cam_pos, intr, center);
  if (!uv) return false;
  if (uv->first < 0.0 || uv->first > intr.width - 1 || uv->second < 0.0 ||
      uv->second > intr.height - 1)
    return false;
  const Vec3 dir = (center - cam_pos) / dist;
  const auto hit = scene.raycast(cam_pos, dir, dist - 1e-6, self_kind, self_index);
  return !hit;  // nothing else in front of the object center
}

}  // namespace

std::vector<Detection> detect(const SceneModel& scene, const Pose& camera,
                              const CameraIntrinsics& intr, const SensorNoise& noise,
                              double max_detect_range, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Matrix3d rot_t = camera.rotation().transpose();
  std::vector<Detection> out;

  auto emit = [&](DetectionClass cls, const std::string& id,
                  const std::vector<Vec3>& corners) -> bool {
    auto box = project_corners(rot_t, camera.position, intr, corners);
    if (!box) return false;
    if (rng.uniform() < noise.detect_false_negative) return false;
    if (noise.bbox_jitter_px > 0.0) {
      box->u_min += rng.gaussian(noise.bbox_jitter_px);
      box->v_min += rng.gaussian(noise.bbox_jitter_px);
      box->u_max += rng.gaussian(noise.bbox_jitter_px);
      box->v_max += rng.gaussian(noise.bbox_jitter_px);
    }
    Detection det;
    det.cls = cls;
    det.u_min = std::clamp(std::min(box->u_min, box->u_max), 0.0, double(intr.width - 1));
    det.u_max = std::clamp(std::max(box->u_min, box->u_max), 0.0, double(intr.width - 1));
    det.v_min = std::clamp(std::min(box->v_min, box->v_max), 0.0, double(intr.height - 1));
    det.v_max = std::clamp(std::max(box->v_min, box->v_max), 0.0, double(intr.height - 1));
    if (det.u_max - det.u_min < 1.0 || det.v_max - det.v_min < 1.0) return false;
    det.target_id = id;
    out.push_back(det);
    return true;
  };

  std::vector<bool> door_emitted(scene.doors.size(), false);
  for (std::size_t i = 0; i < scene.doors.size(); ++i) {
    const DoorSpec& d = scene.doors[i];
    if (!center_visible(scene, camera.position, intr, max_detect_range, rot_t, d.center,
                        SceneHit::Kind::Door, static_cast<int>(i)))
      continue;
    const Vec3 u = d.u_axis(), v = d.v_axis();
    const std::vector<Vec3> corners = {
        d.center + 0.5 * d.width * u + 0.5 * d.height * v,
        d.center + 0.5 * d.width * u - 0.5 * d.height * v,
        d.center - 0.5 * d.width * u + 0.5 * d.height * v,
        d.center - 0.5 * d.width * u - 0.5 * d.height * v};
    door_emitted[i] = emit(DetectionClass::Door, d.id, corners);
  }
  for (std::size_t i = 0; i < scene.handles.size(); ++i) {
    const HandleSpec& h = scene.handles[i];
    const int door_idx = scene.door_index(h.door);
    if (door_idx < 0 || !door_emitted[door_idx]) continue;  // needs its door in-frame
    if (!center_visible(scene, camera.position, intr, max_detect_range, rot_t, h.center,
                        SceneHit::Kind::Handle, static_cast<int>(i)))
      continue;
    const Obb obb = scene.handle_obb(static_cast<int>(i));
    std::vector<Vec3> corners;
    corners.reserve(8);
    for (int c = 0; c < 8; ++c) corners.push_back(obb.corner(c));
    emit(DetectionClass::Handle, h.name, corners);
  }
  return out;
}

Pose pose_estimate(const Pose& true_pose, const SensorNoise& noise, std::uint64_t seed) {
  Rng rng(seed);
  Pose est = true_pose;
  est.position.x() += rng.gaussian(noise.pos_std);
  est.position.y() += rng.gaussian(noise.pos_std);
  est.position.z() += rng.gaussian(noise.pos_std);
  const double dyaw = rng.gaussian(noise.yaw_std);
  if (dyaw != 0.0) est.yaw = wrap_angle(est.yaw + dyaw);
  return est;
}

}  // namespace spraysim
