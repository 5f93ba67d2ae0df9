#pragma once

#include "spraysim/mapping.hpp"
#include "spraysim/perception.hpp"
#include "spraysim/planning.hpp"
#include "spraysim/scene.hpp"
#include "spraysim/sensors.hpp"
#include "spraysim/spray.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace spraysim {

enum class MissionPhase {
  Takeoff,
  Explore,
  SprayApproach,
  SprayAim,
  SpraySpraying,
  ReturnToCorridor,
  Land,
  Done,
  Aborted,
};

const char* to_string(MissionPhase phase);

// First-order kinematic tracker standing in for the flight controller: the
// contract the autonomy relies on is bounded-rate convergence to commanded
// waypoints and headings.
struct VehicleState {
  Pose pose;
  std::deque<Vec3> waypoints;        // front = current target
  std::optional<Vec3> hold_position; // regulation target when the queue is empty
  double commanded_yaw = 0.0;
  double max_speed = 0.5;           // m/s, waypoint tracking
  double hold_speed = 0.15;         // m/s, gentle position-hold corrections
  double max_yaw_rate = 0.8;        // rad/s
  double battery_remaining_s = 180.0;
  double arrival_tolerance = 0.10;  // m, waypoint pop distance
};

// One control tick: heading slews toward the commanded yaw at <= max yaw
// rate, position advances toward the current waypoint (or hold target) at
// <= max speed. With neither, the vehicle hovers in place.
void follow_waypoints(VehicleState& vehicle, double dt);

// Nearest point of the corridor centerline segment [p0, p1], lifted to the
// cruise altitude.
Vec3 corridor_centerline(const Vec3& p0, const Vec3& p1, double cruise_altitude,
                         const Vec3& current);

struct SprayConfig {
  double duration_s = 2.0;
  double standoff = 0.30;
  double approach_gate = 1.0;        // m, distance at which the vehicle turns to aim
  double position_threshold = 0.05;  // m, gate into spraying
  double aim_tolerance_deg = 5.0;
};

struct VehicleConfig {
  double max_speed = 0.5;
  double max_yaw_rate = 0.8;
  Vec3 half_extents{0.35, 0.35, 0.15};
  // Nozzle mounted at the front of the frame, proud of the body box.
  Vec3 nozzle_offset{0.40, 0.0, 0.0};
  double arrival_tolerance = 0.10;
  // Stationary per-axis std of the slow hover drift; models the
  // position-hold wander visible in the reference traces.
  double hold_jitter_std = 0.015;
  double hold_jitter_tau_s = 2.5;
};

struct CameraConfig {
  CameraIntrinsics intrinsics;
  double detect_range = 3.5;
  // The mission loop senses through a downscaled camera; tests can render
  // full resolution through the sensors API directly.
  int mission_downscale = 2;
};

struct YawScanConfig {
  double amplitude = deg2rad(45.0);  // rad, triangle wave peak
  double rate = 0.5;                 // rad/s
};

struct FusionConfig {
  int stable_count = 5;
  double reject_radius = 0.3;
  int window = 5;
};

struct PlannerConfig {
  int max_iterations = 1200;
  double step_size = 0.3;
  double goal_bias = 0.1;
  double rewire_radius = 1.0;
  double goal_tolerance = 0.15;
  double replan_period_s = 2.0;
  double unknown_free_radius = 0.7;
  int max_consecutive_failures = 8;
  int simplify_attempts = 30;
};

struct MissionConfig {
  Vec3 final_goal{9.0, 0.0, 1.2};
  double cruise_altitude = 1.2;
  double goal_tolerance = 0.3;  // m, horizontal distance that counts as arrival
  double dt = 0.05;
  double sensor_period_s = 0.2;
  // Faster perception while closing in on a handle, so the gate refinement
  // fuses the nearest views.
  double approach_sensor_period_s = 0.1;
  int map_stride = 2;      // pointcloud stride for map integration
  int segment_stride = 1;  // pixel stride for region segmentation
  int max_door_cloud_points = 1500;
  double map_resolution = 0.10;
  double handle_offset = 0.06;  // constant protrusion offset used by perception
  double battery_budget_s = 180.0;
  double land_altitude = 0.18;
  std::uint64_t seed = 1;
  Vec3 corridor_p0{0.5, 0.0, 0.0};
  Vec3 corridor_p1{9.5, 0.0, 0.0};
  Aabb start_region{{0.6, -0.5, 0.2}, {1.6, 0.5, 0.2}};

  SprayConfig spray;
  VehicleConfig vehicle;
  SensorNoise noise;
  CameraConfig camera;
  YawScanConfig yaw_scan;
  FusionConfig fusion;
  PlannerConfig planner;
  RansacParams ransac;
  CoverageModel coverage;
  DepositionModel deposition;
  TankState tank;
};

// Partial JSON overrides on top of the defaults above; unknown keys are
// ignored. Throws ConfigError on malformed input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
MissionConfig load_mission_config(const std::string& path);
MissionConfig parse_mission_config(const std::string& text);
std::string mission_config_to_text(const MissionConfig& config);

struct SprayEvent {
  std::string handle_id;
  double start_time = 0.0;
  double duration_s = 0.0;
  double mean_error = 0.0;             // |true nozzle - ground-truth nozzle|
  double mean_handle_distance = 0.0;   // |true nozzle - handle center|
  bool disinfected = false;
  std::vector<std::pair<double, Vec3>> error_trace;  // (t, nozzle error vector)
};

struct TrajectoryRow {
  double t = 0.0;
  Pose pose;
  MissionPhase phase = MissionPhase::Takeoff;
};

struct MissionEvent {
  double t = 0.0;
  std::string what;
};

// Closed-loop simulation of one mission: sensing, mapping, perception,
// planning, and the takeoff/explore/spray/land state machine, deterministic
// in (scene, config, seed, start).
class MissionSim {
 public:
  MissionSim(SceneModel scene, MissionConfig config, std::uint64_t seed,
             const Vec3& start_position);

  void step();
  // Runs until Done/Aborted; a tick cap derived from the battery budget
  // guarantees termination.
  void run();

  MissionPhase phase() const { return phase_; }
  bool done() const { return phase_ == MissionPhase::Done; }
  bool finished() const {
    return phase_ == MissionPhase::Done || phase_ == MissionPhase::Aborted;
  }
  const std::string& abort_reason() const { return abort_reason_; }
  double time() const { return time_; }
  const VehicleState& vehicle() const { return vehicle_; }
  const VoxelGrid& grid() const { return grid_; }
  const TankState& tank() const { return tank_; }
  const SceneModel& scene() const { return scene_; }
  const std::vector<SprayEvent>& spray_events() const { return spray_events_; }
  const std::vector<MissionEvent>& events() const { return events_; }
  const std::vector<TrajectoryRow>& trajectory() const { return trajectory_; }

  Vec3 true_nozzle_position() const {
    return vehicle_.pose.transform(config_.vehicle.nozzle_offset);
  }

 private:
  void sense();
  void update_phase();
  void phase_takeoff();
  void phase_explore();
  void phase_approach();
  void phase_aim();
  void phase_spraying();
  void phase_return();
  void phase_land();

  void trigger_land(const std::string& reason, bool success);
  bool plan_to(const Vec3& target);
  void handle_plan_failure();
  std::optional<Vec3> explore_subgoal() const;
  double scan_offset() const;
  void log(const std::string& what);

  Pose camera_pose(const Pose& vehicle_pose) const { return vehicle_pose; }

  SceneModel scene_;
  MissionConfig config_;
  std::uint64_t seed_;

  MissionPhase phase_ = MissionPhase::Takeoff;
  std::string abort_reason_;
  bool land_success_ = false;

  VehicleState vehicle_;
  Pose estimated_pose_;
  VoxelGrid grid_;
  TankState tank_;
  CameraIntrinsics mission_intrinsics_;

  double time_ = 0.0;
  std::uint64_t tick_ = 0;
  std::uint64_t frame_counter_ = 0;
  std::uint64_t plan_counter_ = 0;
  double last_sensor_time_ = -1e9;
  double last_plan_time_ = -1e9;
  double explore_clock_ = 0.0;
  int consecutive_plan_failures_ = 0;
  bool path_valid_ = false;
  Path current_path_;

  std::map<std::string, HandleFuser> fusers_;
  std::set<std::string> sprayed_;
  std::set<std::string> abandoned_;

  struct Commitment {
    std::string handle_id;
    SprayPose pose;
    bool refined = false;
  };
  std::optional<Commitment> committed_;

  int spray_ticks_ = 0;
  int spray_ticks_target_ = 0;
  std::vector<std::pair<double, Vec3>> spray_trace_;
  std::vector<double> spray_handle_distances_;
  Pose gt_spray_pose_;
  Vec3 spray_handle_center_{0.0, 0.0, 0.0};
  Vec3 hold_wander_{0.0, 0.0, 0.0};
  Vec3 return_target_{0.0, 0.0, 0.0};
  double explore_base_yaw_ = 0.0;

  std::vector<SprayEvent> spray_events_;
  std::vector<MissionEvent> events_;
  std::vector<TrajectoryRow> trajectory_;
};

}  // namespace spraysim
