#include "spraysim/sensors.hpp"

#include "spraysim/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace spraysim;

namespace {

// Small odd-sized camera whose column 20 points exactly 10 degrees off-axis:
// fx chosen so (u - cx)/fx = tan(10 deg) at u = 20.
CameraIntrinsics ten_degree_camera() {
  CameraIntrinsics intr;
  intr.width = 21;
  intr.height = 21;
  const double fx = 10.0 / std::tan(deg2rad(10.0));
  intr.hfov = 2.0 * std::atan(0.5 * intr.width / fx);
  intr.vfov = intr.hfov;
  intr.max_range = 10.0;
  return intr;
}

}  // namespace

TEST_SUITE("sensors") {

TEST_CASE("perpendicular ray depth equals wall distance") {
  const SceneModel scene = testsupport::wall_scene(1.0);
  const CameraIntrinsics intr = ten_degree_camera();
  const Pose camera;  // origin, heading +x, 1 m from the wall
  const DepthImage img = render_depth(scene, camera, intr, SensorNoise::zero(), 1);
  CHECK(img.at(10, 10) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("empty scene renders all no-return") {
  SceneModel scene;
  scene.bounds = {{-10, -10, -10}, {10, 10, 10}};
  scene.finalize();
  const CameraIntrinsics intr = ten_degree_camera();
  const DepthImage img = render_depth(scene, Pose{}, intr, SensorNoise::zero(), 1);
  for (int v = 0; v < img.height; ++v)
    for (int u = 0; u < img.width; ++u) CHECK_FALSE(img.has_return(v, u));
  CHECK(depth_to_pointcloud(img, 1).empty());
}

TEST_CASE("ten-degree off-axis pixel sees 1/cos(10deg)") {
  const SceneModel scene = testsupport::wall_scene(1.0);
  const CameraIntrinsics intr = ten_degree_camera();
  const DepthImage img = render_depth(scene, Pose{}, intr, SensorNoise::zero(), 1);
  // hand-derived ray-plane intersection: 1/cos(10 deg) = 1.015427
  CHECK(img.at(10, 20) == doctest::Approx(1.0154266).epsilon(1e-6));
}

TEST_CASE("single pixel unprojects along the heading") {
  DepthImage img;
  img.width = 1;
  img.height = 1;
  img.intrinsics = CameraIntrinsics{1, 1, 0.8, 0.8, 10.0};
  img.capture_pose = Pose{};
  img.depth = {2.0f};
  const PointCloud cloud = depth_to_pointcloud(img, 1);
  REQUIRE(cloud.size() == 1);
  CHECK(cloud[0].x() == doctest::Approx(2.0));
  CHECK(cloud[0].y() == doctest::Approx(0.0));
  CHECK(cloud[0].z() == doctest::Approx(0.0));

  CHECK_THROWS_AS(depth_to_pointcloud(img, 0), std::invalid_argument);
}

TEST_CASE("noiseless wall render lies exactly on the wall plane") {
  const SceneModel scene = testsupport::wall_scene(2.0);
  CameraIntrinsics intr;
  intr.width = 64;
  intr.height = 48;
  intr.max_range = 8.0;
  const DepthImage img = render_depth(scene, Pose{}, intr, SensorNoise::zero(), 3);
  const PointCloud cloud = depth_to_pointcloud(img, 1);
  REQUIRE(!cloud.empty());
  for (const Vec3& p : cloud) CHECK(std::abs(p.x() - 2.0) < 1e-6);
}

TEST_CASE("noisy wall render stays within 3 sigma of the plane") {
  const SceneModel scene = testsupport::wall_scene(2.0);
  CameraIntrinsics intr;
  intr.width = 64;
  intr.height = 48;
  intr.max_range = 8.0;
  SensorNoise noise = SensorNoise::zero();
  noise.depth_std = 0.01;
  const DepthImage img = render_depth(scene, Pose{}, intr, noise, 3);
  const PointCloud cloud = depth_to_pointcloud(img, 1);
  REQUIRE(!cloud.empty());
  int outliers = 0;
  for (const Vec3& p : cloud)
    // the ray is oblique, so plane distance <= depth error; allow 3.5 sigma
    if (std::abs(p.x() - 2.0) > 3.5 * 0.01) ++outliers;
  CHECK(outliers < static_cast<int>(cloud.size()) / 100);
}

TEST_CASE("stride subsampling bounds the point count") {
  const SceneModel scene = testsupport::wall_scene(2.0);
  CameraIntrinsics intr;
  intr.width = 64;
  intr.height = 48;
  const DepthImage img = render_depth(scene, Pose{}, intr, SensorNoise::zero(), 3);
  const PointCloud cloud = depth_to_pointcloud(img, 8);
  CHECK(cloud.size() <= static_cast<std::size_t>((64 / 8 + 1) * (48 / 8 + 1)));
  CHECK(!cloud.empty());
}

TEST_CASE("detector oracle: door and handle at 2 m") {
  const SceneModel scene = testsupport::door_scene();
  Pose camera;
  camera.position = {0.0, 0.0, 1.0};  // 2 m from the door plane
  camera.yaw = -kPi / 2;              // facing -y
  CameraIntrinsics intr;
  intr.width = 320;
  intr.height = 240;

  const auto dets = detect(scene, camera, intr, SensorNoise::zero(), 3.5, 1);
  REQUIRE(dets.size() == 2);
  CHECK(dets[0].cls == DetectionClass::Door);
  CHECK(dets[1].cls == DetectionClass::Handle);
  CHECK(dets[0].target_id == "door0");
  CHECK(dets[1].target_id == "handle0");
  // handle box nested inside the door box
  CHECK(dets[1].u_min >= dets[0].u_min);
  CHECK(dets[1].u_max <= dets[0].u_max);
  CHECK(dets[1].v_min >= dets[0].v_min);
  CHECK(dets[1].v_max <= dets[0].v_max);
}

TEST_CASE("detector respects facing, range and false negatives") {
  const SceneModel scene = testsupport::door_scene();
  CameraIntrinsics intr;
  intr.width = 320;
  intr.height = 240;

  Pose away;
  away.position = {0.0, 0.0, 1.0};
  away.yaw = kPi / 2;  // facing +y, away from the door
  CHECK(detect(scene, away, intr, SensorNoise::zero(), 3.5, 1).empty());

  Pose far;
  far.position = {0.0, 3.0, 1.0};  // 5 m from the door plane
  far.yaw = -kPi / 2;
  CHECK(detect(scene, far, intr, SensorNoise::zero(), 3.5, 1).empty());

  Pose camera;
  camera.position = {0.0, 0.0, 1.0};
  camera.yaw = -kPi / 2;
  SensorNoise blind = SensorNoise::zero();
  blind.detect_false_negative = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(detect(scene, camera, intr, blind, 3.5, seed).empty());
}

TEST_CASE("handle is never reported without its parent door") {
  const SceneModel scene = testsupport::door_scene();
  CameraIntrinsics intr;
  intr.width = 160;
  intr.height = 120;
  SensorNoise noise;
  noise.detect_false_negative = 0.5;
  noise.bbox_jitter_px = 3.0;
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Pose camera;
    camera.position = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 1.0};
    camera.yaw = -kPi / 2 + rng.uniform(-0.6, 0.6);
    const auto dets = detect(scene, camera, intr, noise, 3.5, trial);
    bool saw_door = false;
    for (const auto& d : dets)
      if (d.cls == DetectionClass::Door) saw_door = true;
    for (const auto& d : dets)
      if (d.cls == DetectionClass::Handle) CHECK(saw_door);
  }
}

TEST_CASE("occlusion gates detection") {
  SceneModel scene = testsupport::door_scene();
  // A slab between camera and door.
  scene.obstacles.push_back({{-1.0, -1.0, 0.0}, {1.0, -0.8, 3.0}});
  scene.finalize();
  Pose camera;
  camera.position = {0.0, 0.5, 1.0};
  camera.yaw = -kPi / 2;
  CameraIntrinsics intr;
  intr.width = 320;
  intr.height = 240;
  CHECK(detect(scene, camera, intr, SensorNoise::zero(), 3.5, 1).empty());
}

TEST_CASE("pose estimate is the identity with zero noise") {
  Pose pose;
  pose.position = {1.0, 2.0, 3.0};
  pose.yaw = 0.7;
  const Pose est = pose_estimate(pose, SensorNoise::zero(), 42);
  CHECK(est.position == pose.position);
  CHECK(est.yaw == pose.yaw);
}

TEST_CASE("pose estimate noise statistics") {
  SensorNoise noise = SensorNoise::zero();
  noise.pos_std = 0.01;
  noise.yaw_std = 0.005;
  const int n = 10000;
  Vec3 sum = Vec3::Zero(), sq = Vec3::Zero();
  double yaw_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Pose est = pose_estimate(Pose{}, noise, mix_seed(1234, i));
    sum += est.position;
    sq += est.position.cwiseProduct(est.position);
    yaw_sum += est.yaw;
  }
  for (int axis = 0; axis < 3; ++axis) {
    const double mean = sum[axis] / n;
    const double std = std::sqrt(sq[axis] / n - mean * mean);
    CHECK(std == doctest::Approx(0.01).epsilon(0.1));  // within [0.009, 0.011]
    CHECK(std >= 0.009);
    CHECK(std <= 0.011);
  }
  CHECK(std::abs(yaw_sum / n) < 3.0 * 0.005 / std::sqrt(double(n)));
}

TEST_CASE("sensing is bit-deterministic in the seed") {
  const SceneModel scene = testsupport::door_scene();
  Pose camera;
  camera.position = {0.3, 0.2, 1.1};
  camera.yaw = -1.4;
  CameraIntrinsics intr;
  intr.width = 80;
  intr.height = 60;
  SensorNoise noise;  // defaults: everything nonzero

  const DepthImage a = render_depth(scene, camera, intr, noise, 77);
  const DepthImage b = render_depth(scene, camera, intr, noise, 77);
  CHECK(a.depth == b.depth);
  const DepthImage c = render_depth(scene, camera, intr, noise, 78);
  CHECK(a.depth != c.depth);

  const auto d1 = detect(scene, camera, intr, noise, 3.5, 5);
  const auto d2 = detect(scene, camera, intr, noise, 3.5, 5);
  REQUIRE(d1.size() == d2.size());
  for (std::size_t i = 0; i < d1.size(); ++i) {
    CHECK(d1[i].u_min == d2[i].u_min);
    CHECK(d1[i].v_max == d2[i].v_max);
    CHECK(d1[i].target_id == d2[i].target_id);
  }
}

}  // TEST_SUITE
