#include "spraysim/mission.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace spraysim;

namespace {

MissionConfig test_config() {
  MissionConfig cfg;  // library defaults, battery trimmed for test speed
  cfg.battery_budget_s = 150.0;
  return cfg;
}

}  // namespace

TEST_SUITE("mission") {

TEST_CASE("follow_waypoints kinematics") {
  VehicleState v;
  v.max_speed = 0.5;
  v.arrival_tolerance = 0.10;

  SUBCASE("bounded step toward the waypoint") {
    v.waypoints.push_back({1.0, 0.0, 0.0});
    follow_waypoints(v, 0.1);
    CHECK(v.pose.position.x() == doctest::Approx(0.05));
    CHECK(v.waypoints.size() == 1);
  }
  SUBCASE("waypoint pops within the arrival tolerance") {
    v.waypoints.push_back({0.11, 0.0, 0.0});
    v.waypoints.push_back({1.0, 0.0, 0.0});
    follow_waypoints(v, 0.2);  // moves 0.1, lands within tolerance of wp0
    CHECK(v.waypoints.size() == 1);
    CHECK(v.waypoints.front().x() == doctest::Approx(1.0));
  }
  SUBCASE("empty queue hovers") {
    const Vec3 before = v.pose.position;
    follow_waypoints(v, 0.1);
    CHECK(v.pose.position == before);
  }
  SUBCASE("hold target regulates without popping") {
    v.hold_position = Vec3{0.3, 0.0, 0.0};
    for (int i = 0; i < 20; ++i) follow_waypoints(v, 0.1);
    CHECK(v.pose.position.x() == doctest::Approx(0.3));
  }
  SUBCASE("yaw slews at the configured rate") {
    v.max_yaw_rate = 0.5;
    v.commanded_yaw = 1.0;
    follow_waypoints(v, 0.1);
    CHECK(v.pose.yaw == doctest::Approx(0.05));
  }
  CHECK_THROWS_AS(follow_waypoints(v, 0.0), std::invalid_argument);
}

TEST_CASE("corridor centerline projection") {
  const Vec3 p0{0.0, 0.0, 0.0};
  const Vec3 p1{10.0, 0.0, 0.0};
  const double cruise = 1.2;

  const Vec3 a = corridor_centerline(p0, p1, cruise, {2.0, 0.8, 1.0});
  CHECK(a == Vec3{2.0, 0.0, 1.2});
  const Vec3 b = corridor_centerline(p0, p1, cruise, {3.0, 0.0, 1.2});
  CHECK(b == Vec3{3.0, 0.0, 1.2});
  const Vec3 c = corridor_centerline(p0, p1, cruise, {14.0, -0.4, 1.0});
  CHECK(c == Vec3{10.0, 0.0, 1.2});
}

TEST_CASE("nominal mission sprays the handle once and completes") {
  const SceneModel scene = default_hallway_scene();
  const MissionConfig cfg = test_config();
  MissionSim sim(scene, cfg, 42, {1.0, 0.0, 0.2});
  sim.run();

  CHECK(sim.done());
  REQUIRE(sim.spray_events().size() == 1);
  const SprayEvent& event = sim.spray_events()[0];
  CHECK(event.handle_id == "handle0");
  CHECK(event.duration_s == doctest::Approx(2.0).epsilon(cfg.dt / 2.0));
  CHECK(event.error_trace.size() == 40);
  CHECK(event.mean_error < 0.15);

  // finished within goal tolerance of the final goal (horizontal)
  const Vec3 final_pos = sim.vehicle().pose.position;
  CHECK(std::hypot(final_pos.x() - cfg.final_goal.x(),
                   final_pos.y() - cfg.final_goal.y()) < cfg.goal_tolerance + 0.05);

  // tank consumed exactly one burst
  CHECK(sim.tank().remaining_ml ==
        doctest::Approx(250.0 - 76.9 * 2.0 / 60.0).epsilon(1e-6));

  // safety: the true vehicle box never intersects scene obstacles
  for (const auto& row : sim.trajectory())
    CHECK_FALSE(testsupport::pose_hits_scene(scene, row.pose, cfg.vehicle.half_extents));
}

TEST_CASE("vehicle holds position while spraying (empty queue)") {
  const SceneModel scene = default_hallway_scene();
  const MissionConfig cfg = test_config();
  MissionSim sim(scene, cfg, 42, {1.0, 0.0, 0.2});
  int spray_ticks = 0;
  while (!sim.finished()) {
    sim.step();
    if (sim.phase() == MissionPhase::SpraySpraying) {
      ++spray_ticks;
      CHECK(sim.vehicle().waypoints.empty());
    }
  }
  CHECK(spray_ticks >= 40);
}

TEST_CASE("blind detector means no sprays, mission still completes") {
  const SceneModel scene = default_hallway_scene();
  MissionConfig cfg = test_config();
  cfg.noise.detect_false_negative = 1.0;
  MissionSim sim(scene, cfg, 7, {1.0, 0.0, 0.2});
  sim.run();
  CHECK(sim.done());
  CHECK(sim.spray_events().empty());
}

TEST_CASE("battery fail-safe lands and aborts") {
  const SceneModel scene = default_hallway_scene();
  MissionConfig cfg = test_config();
  cfg.battery_budget_s = 1.0;
  MissionSim sim(scene, cfg, 7, {1.0, 0.0, 0.2});
  sim.run();
  CHECK(sim.phase() == MissionPhase::Aborted);
  CHECK(sim.abort_reason() == "low battery");
  CHECK(sim.spray_events().empty());
}

TEST_CASE("each handle sprayed at most once") {
  const SceneModel scene = default_hallway_scene();
  const MissionConfig cfg = test_config();
  MissionSim sim(scene, cfg, 3, {0.8, 0.2, 0.2});
  sim.run();
  std::set<std::string> ids;
  for (const auto& e : sim.spray_events()) {
    CHECK(ids.insert(e.handle_id).second);  // no duplicates
  }
}

TEST_CASE("mission is deterministic in the seed") {
  const SceneModel scene = default_hallway_scene();
  const MissionConfig cfg = test_config();
  MissionSim a(scene, cfg, 9, {1.0, 0.1, 0.2});
  MissionSim b(scene, cfg, 9, {1.0, 0.1, 0.2});
  a.run();
  b.run();
  REQUIRE(a.trajectory().size() == b.trajectory().size());
  for (std::size_t i = 0; i < a.trajectory().size(); ++i) {
    CHECK(a.trajectory()[i].pose.position == b.trajectory()[i].pose.position);
    CHECK(a.trajectory()[i].pose.yaw == b.trajectory()[i].pose.yaw);
    CHECK(a.trajectory()[i].phase == b.trajectory()[i].phase);
  }
  REQUIRE(a.spray_events().size() == b.spray_events().size());
  for (std::size_t i = 0; i < a.spray_events().size(); ++i)
    CHECK(a.spray_events()[i].mean_error == b.spray_events()[i].mean_error);
}

TEST_CASE("mission config round-trips through JSON") {
  MissionConfig cfg;
  cfg.final_goal = {7.5, 0.25, 1.1};
  cfg.noise.depth_std = 0.02;
  cfg.spray.duration_s = 3.0;
  cfg.coverage.table = {{1.0, 0.7, 0.6}, {3.0, 0.99, 0.95}};
  const std::string text = mission_config_to_text(cfg);
  const MissionConfig back = parse_mission_config(text);
  CHECK(back.final_goal == cfg.final_goal);
  CHECK(back.noise.depth_std == cfg.noise.depth_std);
  CHECK(back.spray.duration_s == cfg.spray.duration_s);
  REQUIRE(back.coverage.table.size() == 2);
  CHECK(back.coverage.table[1].initial == doctest::Approx(0.99));
  CHECK(mission_config_to_text(back) == text);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_mission_config("{ nope"), ConfigError);
  CHECK_THROWS_AS(parse_mission_config(R"({"dt": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_mission_config(R"({"coverage": {"table": [[2, 0.5, 0.9]]}})"),
                  ConfigError);
  const MissionConfig cfg = parse_mission_config(R"({"spray": {"duration": 2.5}})");
  CHECK(cfg.spray.duration_s == doctest::Approx(2.5));
  CHECK(cfg.cruise_altitude == doctest::Approx(1.2));  // untouched defaults
}

}  // TEST_SUITE
