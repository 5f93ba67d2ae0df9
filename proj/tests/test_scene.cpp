#include "spraysim/scene.hpp"

#include "spraysim/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace spraysim;

namespace {

const char* kMinimalScene = R"({
  "bounds": {"min": [0, -1.5, -0.2], "max": [10, 1.5, 2.8]},
  "obstacles": [
    {"min": [0, -1.5, 0], "max": [10, -1.2, 2.6]},
    {"min": [0, 1.2, 0], "max": [10, 1.5, 2.6]}
  ],
  "doors": [
    {"id": "d1", "center": [5, -1.2, 1.0], "width": 0.9, "height": 2.0, "normal": [0, 1, 0]}
  ],
  "handles": [
    {"door": "d1", "center": [5.3, -1.14, 1.0], "extents": [0.12, 0.04, 0.04], "protrusion": 0.06}
  ]
})";

}  // namespace

TEST_SUITE("scene") {

TEST_CASE("minimal scene maps fields directly") {
  const SceneModel scene = parse_scene(kMinimalScene);
  CHECK(scene.obstacles.size() == 2);
  CHECK(scene.doors.size() == 1);
  CHECK(scene.handles.size() == 1);
  CHECK(scene.doors[0].id == "d1");
  CHECK(scene.handles[0].door == "d1");
  CHECK(scene.handles[0].name == "handle0");
  CHECK(scene.handles[0].protrusion == doctest::Approx(0.06));
}

TEST_CASE("handle referencing missing door fails validation") {
  std::string text = kMinimalScene;
  const auto pos = text.find("\"door\": \"d1\"");
  text.replace(pos, 12, "\"door\": \"nope\"");
  CHECK_THROWS_WITH_AS(parse_scene(text),
                       doctest::Contains("missing door 'nope'"), SceneError);
}

TEST_CASE("scene with zero handles is valid") {
  std::string text = kMinimalScene;
  const auto pos = text.find("\"handles\"");
  text = text.substr(0, pos) + "\"handles\": []\n}";
  const SceneModel scene = parse_scene(text);
  CHECK(scene.handles.empty());
  CHECK(scene.doors.size() == 1);
}

TEST_CASE("malformed text reports the line") {
  const std::string text = "{\n  \"bounds\": {\n  oops\n}";
  CHECK_THROWS_WITH_AS(parse_scene(text), doctest::Contains("line 3"), SceneError);
}

TEST_CASE("save/load round-trips field-exact") {
  const SceneModel scene = parse_scene(kMinimalScene);
  const auto path = std::filesystem::temp_directory_path() / "spraysim_scene_rt.json";
  save_scene(scene, path.string());
  const SceneModel again = load_scene(path.string());
  // A second dump of the reloaded model must be byte-identical.
  CHECK(scene_to_text(scene) == scene_to_text(again));
  CHECK(again.handles[0].center == scene.handles[0].center);
  CHECK(again.doors[0].normal == scene.doors[0].normal);
  std::filesystem::remove(path);
}

TEST_CASE("ground-truth spray pose, axis-aligned") {
  SceneModel scene;
  scene.bounds = {{-5, -5, -5}, {5, 5, 5}};
  DoorSpec door;
  door.id = "d";
  door.center = {-0.06, 0, 1.0};
  door.width = 1.0;
  door.height = 2.0;
  door.normal = {1, 0, 0};
  scene.doors.push_back(door);
  HandleSpec h;
  h.name = "h";
  h.door = "d";
  h.center = {0, 0, 1};
  h.protrusion = 0.06;
  scene.handles.push_back(h);
  scene.finalize();

  const Pose pose = ground_truth_spray_pose(scene, "h");
  CHECK(pose.position.x() == doctest::Approx(0.30));
  CHECK(pose.position.y() == doctest::Approx(0.0));
  CHECK(pose.position.z() == doctest::Approx(1.0));
  CHECK(pose.heading().x() == doctest::Approx(-1.0));

  CHECK_THROWS_AS(ground_truth_spray_pose(scene, "nope"), SceneError);
}

TEST_CASE("ground-truth spray pose, second axis case") {
  SceneModel scene;
  scene.bounds = {{-5, -5, -5}, {8, 8, 5}};
  DoorSpec door;
  door.id = "d";
  door.center = {2, 3.06, 1.1};
  door.width = 1.0;
  door.height = 2.0;
  door.normal = {0, -1, 0};
  scene.doors.push_back(door);
  HandleSpec h;
  h.name = "h";
  h.door = "d";
  h.center = {2, 3, 1.1};
  h.protrusion = 0.06;
  scene.handles.push_back(h);
  scene.finalize();

  const Pose pose = ground_truth_spray_pose(scene, "h");
  CHECK(pose.position.x() == doctest::Approx(2.0));
  CHECK(pose.position.y() == doctest::Approx(2.70));
  CHECK(pose.position.z() == doctest::Approx(1.1));
  CHECK(pose.heading().y() == doctest::Approx(1.0));
}

TEST_CASE("spray standoff distance is exactly 0.30 for any normal") {
  // Diagonal-normal case plus a random sweep.
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const double yaw = i == 0 ? kPi / 4 : rng.uniform(-kPi, kPi);
    SceneModel scene;
    scene.bounds = {{-5, -5, -5}, {5, 5, 5}};
    DoorSpec door;
    door.id = "d";
    door.normal = {std::cos(yaw), std::sin(yaw), 0.0};
    door.center = Vec3{0, 0, 1} - 0.06 * door.normal;
    door.width = 1.0;
    door.height = 1.8;
    scene.doors.push_back(door);
    HandleSpec h;
    h.name = "h";
    h.door = "d";
    h.center = {0, 0, 1};
    h.protrusion = 0.06;
    scene.handles.push_back(h);
    scene.finalize();

    const Pose pose = ground_truth_spray_pose(scene, "h");
    CHECK((pose.position - h.center).norm() == doctest::Approx(0.30).epsilon(1e-9));
    CHECK(pose.heading().dot(door.normal) == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("invariant violations are named") {
  SceneModel scene = testsupport::door_scene();
  SUBCASE("non-unit normal") {
    scene.doors[0].normal = {0, 2, 0};
    CHECK_THROWS_AS(scene.finalize(), SceneError);
  }
  SUBCASE("handle floating off the door plane") {
    scene.handles[0].protrusion = 0.5;  // box depth cannot reach the plane
    scene.handles[0].center = {0.25, -1.5, 1.0};
    CHECK_THROWS_WITH_AS(scene.finalize(), doctest::Contains("handle0"), SceneError);
  }
  SUBCASE("handle outside the door rectangle") {
    scene.handles[0].center = {2.0, -1.94, 1.0};
    CHECK_THROWS_WITH_AS(scene.finalize(), doctest::Contains("door rectangle"),
                         SceneError);
  }
  SUBCASE("geometry outside world bounds") {
    scene.obstacles.push_back({{9.0, -3.0, -1.0}, {12.0, 0.0, 1.0}});
    CHECK_THROWS_WITH_AS(scene.finalize(), doctest::Contains("outside world bounds"),
                         SceneError);
  }
}

TEST_CASE("raycast hits the nearest surface") {
  const SceneModel scene = testsupport::door_scene();
  // Looking straight at the handle: the handle box face is nearer than the
  // door plane.
  const Vec3 origin{0.25, 0.0, 1.0};
  const Vec3 dir{0.0, -1.0, 0.0};
  const auto hit = scene.raycast(origin, dir, 10.0);
  REQUIRE(hit.has_value());
  CHECK(hit->kind == SceneHit::Kind::Handle);
  // handle box spans y in [-2.0, -1.88]; front face at 1.88 m
  CHECK(hit->t == doctest::Approx(1.88).epsilon(1e-9));

  // Next to the handle the same ray reaches the door plane (coplanar with
  // the wall face, so the surface kind is a tie; the depth is what counts).
  const auto door_hit = scene.raycast({-0.2, 0.0, 1.0}, dir, 10.0);
  REQUIRE(door_hit.has_value());
  CHECK(door_hit->t == doctest::Approx(2.0).epsilon(1e-9));
}

}  // TEST_SUITE
