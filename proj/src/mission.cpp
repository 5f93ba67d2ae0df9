#include "spraysim/mission.hpp"

#include "spraysim/rng.hpp"

#include <algorithm>
#include <cmath>

namespace spraysim {

namespace {

// Stream ids for per-subsystem seed mixing.
constexpr std::uint64_t kStreamPose = 1;
constexpr std::uint64_t kStreamRender = 2;
constexpr std::uint64_t kStreamDetect = 3;
constexpr std::uint64_t kStreamRansac = 4;
constexpr std::uint64_t kStreamPlan = 5;
constexpr std::uint64_t kStreamJitter = 6;

double horizontal_distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

PointCloud decimate(const PointCloud& cloud, int max_points) {
  if (max_points <= 0 || static_cast<int>(cloud.size()) <= max_points) return cloud;
  const int k = (static_cast<int>(cloud.size()) + max_points - 1) / max_points;
  PointCloud out;
  out.reserve(cloud.size() / k + 1);
  for (std::size_t i = 0; i < cloud.size(); i += k) out.push_back(cloud[i]);
  return out;
}

}  // namespace

const char* to_string(MissionPhase phase) {
  switch (phase) {
    case MissionPhase::Takeoff: return "takeoff";
    case MissionPhase::Explore: return "explore";
    case MissionPhase::SprayApproach: return "spray_approach";
    case MissionPhase::SprayAim: return "spray_aim";
    case MissionPhase::SpraySpraying: return "spraying";
    case MissionPhase::ReturnToCorridor: return "return_to_corridor";
    case MissionPhase::Land: return "land";
    case MissionPhase::Done: return "done";
    case MissionPhase::Aborted: return "aborted";
  }
  return "?";
}

void follow_waypoints(VehicleState& vehicle, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("follow_waypoints: dt must be > 0");

  const double yaw_err = wrap_angle(vehicle.commanded_yaw - vehicle.pose.yaw);
  const double max_turn = vehicle.max_yaw_rate * dt;
  vehicle.pose.yaw =
      wrap_angle(vehicle.pose.yaw + std::clamp(yaw_err, -max_turn, max_turn));

  const Vec3* target = nullptr;
  bool from_queue = false;
  double speed = vehicle.max_speed;
  if (!vehicle.waypoints.empty()) {
    target = &vehicle.waypoints.front();
    from_queue = true;
  } else if (vehicle.hold_position) {
    target = &*vehicle.hold_position;
    speed = std::min(vehicle.max_speed, vehicle.hold_speed);
  }
  if (!target) return;  // hover

  const Vec3 delta = *target - vehicle.pose.position;
  double dist = delta.norm();
  if (dist > 1e-12) {
    const double step = std::min(dist, speed * dt);
    vehicle.pose.position += delta * (step / dist);
    dist -= step;
  }
  if (from_queue && dist <= vehicle.arrival_tolerance) vehicle.waypoints.pop_front();
}

Vec3 corridor_centerline(const Vec3& p0, const Vec3& p1, double cruise_altitude,
                         const Vec3& current) {
  const Vec3 ab = p1 - p0;
  const double len2 = ab.squaredNorm();
  double t = 0.0;
  if (len2 > 1e-12) t = std::clamp((current - p0).dot(ab) / len2, 0.0, 1.0);
  Vec3 p = p0 + t * ab;
  p.z() = cruise_altitude;
  return p;
}

MissionSim::MissionSim(SceneModel scene, MissionConfig config, std::uint64_t seed,
                       const Vec3& start_position)
    : scene_(std::move(scene)), config_(std::move(config)), seed_(seed) {
  validate(config_.coverage);
  validate(config_.deposition);
  if (!scene_.bounds.contains(start_position))
    throw ConfigError("mission: start position outside scene bounds");

  grid_ = VoxelGrid(scene_.bounds, config_.map_resolution);
  tank_ = config_.tank;
  mission_intrinsics_ =
      config_.camera.intrinsics.downscaled(config_.camera.mission_downscale);

  vehicle_.pose.position = start_position;
  vehicle_.pose.yaw = yaw_from_direction(config_.corridor_p1 - config_.corridor_p0);
  vehicle_.commanded_yaw = vehicle_.pose.yaw;
  vehicle_.max_speed = config_.vehicle.max_speed;
  vehicle_.max_yaw_rate = config_.vehicle.max_yaw_rate;
  vehicle_.arrival_tolerance = config_.vehicle.arrival_tolerance;
  vehicle_.battery_remaining_s = config_.battery_budget_s;
  estimated_pose_ = vehicle_.pose;

  vehicle_.waypoints.push_back(
      {start_position.x(), start_position.y(), config_.cruise_altitude});

  trajectory_.push_back({0.0, vehicle_.pose, phase_});
  log("takeoff");
}

void MissionSim::log(const std::string& what) { events_.push_back({time_, what}); }

void MissionSim::trigger_land(const std::string& reason, bool success) {
  if (phase_ == MissionPhase::Land || finished()) return;
  phase_ = MissionPhase::Land;
  land_success_ = success;
  if (!success) abort_reason_ = reason;
  committed_.reset();
  vehicle_.hold_position.reset();
  vehicle_.waypoints.clear();
  vehicle_.waypoints.push_back({estimated_pose_.position.x(),
                                estimated_pose_.position.y(), config_.land_altitude});
  log("land: " + reason);
}

double MissionSim::scan_offset() const {
  const double amp = config_.yaw_scan.amplitude;
  const double rate = config_.yaw_scan.rate;
  if (amp <= 0.0 || rate <= 0.0) return 0.0;
  // Triangle wave: the yaw-rate-limited way to sweep side to side.
  const double s = std::fmod(explore_clock_ * rate, 4.0 * amp);
  if (s < amp) return s;
  if (s < 3.0 * amp) return 2.0 * amp - s;
  return s - 4.0 * amp;
}

bool MissionSim::plan_to(const Vec3& target) {
  const Vec3& he = config_.vehicle.half_extents;
  const double lenient = config_.planner.unknown_free_radius;

  // A target still buried in unknown space cannot be reached; skip the
  // planning budget entirely.
  if (!cuboid_free_lenient(grid_, target, he, estimated_pose_.position, lenient))
    return false;

  PlannerParams params;
  params.max_iterations = config_.planner.max_iterations;
  params.step_size = config_.planner.step_size;
  params.goal_bias = config_.planner.goal_bias;
  params.rewire_radius = config_.planner.rewire_radius;
  params.goal_tolerance = config_.planner.goal_tolerance;
  params.unknown_free_radius = lenient;
  params.terminate_on_goal = true;
  params.seed = mix_seed(seed_, kStreamPlan, plan_counter_++);

  Vec3 plan_start = estimated_pose_.position;
  PlanResult result = plan_path(grid_, plan_start, target, he, params);
  if (result.status == PlanStatus::StartInCollision) {
    // Sensor-noise speckle can paint occupied voxels onto the cuboid edge
    // even though the vehicle flew here collision-free; plan from the
    // nearest clear spot and let the tracker cover the nudge.
    for (double r : {0.1, 0.2, 0.3}) {
      for (const Vec3& dir :
           {Vec3{1, 0, 0}, Vec3{-1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, -1, 0},
            Vec3{0, 0, 1}, Vec3{0, 0, -1}}) {
        const Vec3 candidate = estimated_pose_.position + r * dir;
        if (!cuboid_free_lenient(grid_, candidate, he, candidate, lenient)) continue;
        plan_start = candidate;
        params.seed = mix_seed(seed_, kStreamPlan, plan_counter_++);
        result = plan_path(grid_, plan_start, target, he, params);
        break;
      }
      if (result.status != PlanStatus::StartInCollision) break;
    }
  }
  if (!result.ok()) return false;

  const Path simplified =
      simplify_path(grid_, result.path, he, mix_seed(seed_, kStreamPlan, plan_counter_++),
                    config_.planner.simplify_attempts, lenient);

  current_path_ = simplified;
  path_valid_ = true;
  last_plan_time_ = time_;
  vehicle_.waypoints.clear();
  for (const Vec3& wp : simplified.waypoints) {
    if ((wp - estimated_pose_.position).norm() <= vehicle_.arrival_tolerance) continue;
    vehicle_.waypoints.push_back(wp);
  }
  if (vehicle_.waypoints.empty()) vehicle_.waypoints.push_back(target);
  return true;
}

void MissionSim::handle_plan_failure() {
  if (++consecutive_plan_failures_ >= config_.planner.max_consecutive_failures)
    trigger_land("planner failures", false);
}

std::optional<Vec3> MissionSim::explore_subgoal() const {
  // Farthest point along the corridor centerline that is already observed
  // free; progress toward the final goal while the goal itself is still in
  // unexplored space.
  const Vec3 a{config_.corridor_p0.x(), config_.corridor_p0.y(), config_.cruise_altitude};
  const Vec3 b{config_.corridor_p1.x(), config_.corridor_p1.y(), config_.cruise_altitude};
  const double len = (b - a).norm();
  if (len < 1e-9) return std::nullopt;
  const Vec3 dir = (b - a) / len;
  const double s_cur = std::clamp((estimated_pose_.position - a).dot(dir), 0.0, len);

  for (double s = len; s > s_cur + 0.5; s -= 0.25) {
    const Vec3 p = a + s * dir;
    if (cuboid_free_lenient(grid_, p, config_.vehicle.half_extents,
                            estimated_pose_.position,
                            config_.planner.unknown_free_radius))
      return p;
  }
  return std::nullopt;
}

void MissionSim::sense() {
  ++frame_counter_;
  last_sensor_time_ = time_;

  const Pose cam_true = camera_pose(vehicle_.pose);
  const Pose cam_est = camera_pose(estimated_pose_);

  DepthImage img = render_depth(scene_, cam_true, mission_intrinsics_, config_.noise,
                                mix_seed(seed_, kStreamRender, frame_counter_));
  // The autonomy stack registers depth against its own pose belief; the
  // measured ranges stay physical.
  img.capture_pose = cam_est;

  const PointCloud cloud = depth_to_pointcloud(img, config_.map_stride);
  grid_.integrate_pointcloud(cloud, cam_est.position);

  // No-return rays still clear the space they crossed; without this the
  // corridor ahead stays unknown and the planner can never make progress.
  const double carve_range = mission_intrinsics_.max_range * 0.95;
  for (int v = 0; v < img.height; v += config_.map_stride)
    for (int u = 0; u < img.width; u += config_.map_stride)
      if (!img.has_return(v, u))
        grid_.carve_free_segment(cam_est.position, unproject(img, v, u, carve_range));

  const std::vector<Detection> detections =
      detect(scene_, cam_true, mission_intrinsics_, config_.noise,
             config_.camera.detect_range, mix_seed(seed_, kStreamDetect, frame_counter_));

  int local_index = 0;
  for (const Detection& det : detections) {
    if (det.cls != DetectionClass::Handle) continue;
    ++local_index;
    if (sprayed_.count(det.target_id) || abandoned_.count(det.target_id)) continue;

    // The protruding handle's box can stick out of the door box at oblique
    // views; pair by overlap and keep only the on-door portion.
    const Detection* door = nullptr;
    Detection clipped = det;
    double best_area = 0.0;
    for (const Detection& d : detections) {
      if (d.cls != DetectionClass::Door) continue;
      const double u0 = std::max(det.u_min, d.u_min);
      const double v0 = std::max(det.v_min, d.v_min);
      const double u1 = std::min(det.u_max, d.u_max);
      const double v1 = std::min(det.v_max, d.v_max);
      const double area = std::max(0.0, u1 - u0) * std::max(0.0, v1 - v0);
      if (area > best_area) {
        best_area = area;
        door = &d;
        clipped.u_min = u0;
        clipped.v_min = v0;
        clipped.u_max = u1;
        clipped.v_max = v1;
      }
    }
    if (!door || best_area < 1.0) continue;

    SegmentedRegions regions;
    try {
      regions = segment_regions(img, {*door, clipped}, config_.segment_stride);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (regions.handle_empty || regions.door_cloud.size() < 3) continue;

    RansacParams ransac = config_.ransac;
    ransac.seed = mix_seed(seed_, kStreamRansac,
                           frame_counter_ * 64 + static_cast<std::uint64_t>(local_index));
    const PointCloud door_cloud =
        decimate(regions.door_cloud, config_.max_door_cloud_points);
    const auto plane = fit_door_plane(door_cloud, cam_est.position, ransac);
    if (!plane) continue;

    const HandleEstimate estimate =
        localize_handle(regions.handle_cloud, *plane, config_.handle_offset);
    fusers_
        .try_emplace(det.target_id, config_.fusion.stable_count,
                     config_.fusion.reject_radius, config_.fusion.window)
        .first->second.add(estimate);
  }

  // New occupancy can invalidate the path we are flying.
  if (!vehicle_.waypoints.empty()) {
    Path remaining;
    remaining.waypoints.push_back(estimated_pose_.position);
    for (const Vec3& wp : vehicle_.waypoints) remaining.waypoints.push_back(wp);
    path_valid_ = path_free(grid_, remaining, config_.vehicle.half_extents,
                            estimated_pose_.position,
                            config_.planner.unknown_free_radius);
  }
}

void MissionSim::phase_takeoff() {
  if (vehicle_.waypoints.empty()) {
    phase_ = MissionPhase::Explore;
    log("explore");
  }
}

void MissionSim::phase_explore() {
  // Detour to a stably localized, not-yet-sprayed handle first.
  for (auto& [id, fuser] : fusers_) {
    if (sprayed_.count(id) || abandoned_.count(id) || !fuser.stable()) continue;
    const auto fused = fuser.fused(config_.handle_offset);
    if (!fused) continue;
    try {
      const SprayPose pose =
          compute_spray_pose(*fused, config_.spray.standoff, config_.vehicle.nozzle_offset);
      committed_ = Commitment{id, pose, false};
    } catch (const std::invalid_argument&) {
      abandoned_.insert(id);
      log("abandon " + id + ": unusable spray pose");
      continue;
    }
    phase_ = MissionPhase::SprayApproach;
    vehicle_.waypoints.clear();
    path_valid_ = false;
    last_plan_time_ = -1e9;
    log("spray approach: " + id);
    return;
  }

  const Vec3 goal{config_.final_goal.x(), config_.final_goal.y(),
                  config_.cruise_altitude};
  if (horizontal_distance(estimated_pose_.position, goal) < config_.goal_tolerance) {
    trigger_land("final goal reached", true);
    return;
  }

  const bool replan_due = time_ - last_plan_time_ >= config_.planner.replan_period_s;
  if (vehicle_.waypoints.empty() || !path_valid_ || replan_due) {
    bool ok = plan_to(goal);
    if (!ok) {
      const auto sub = explore_subgoal();
      if (sub) ok = plan_to(*sub);
    }
    if (ok) consecutive_plan_failures_ = 0;
    else handle_plan_failure();
  }

  if (!vehicle_.waypoints.empty()) {
    Vec3 dir = vehicle_.waypoints.front() - estimated_pose_.position;
    dir.z() = 0.0;
    if (dir.norm() > 0.05) explore_base_yaw_ = yaw_from_direction(dir);
  }
  vehicle_.commanded_yaw = wrap_angle(explore_base_yaw_ + scan_offset());
  explore_clock_ += config_.dt;
}

void MissionSim::phase_approach() {
  if (!committed_) {
    phase_ = MissionPhase::Explore;
    return;
  }
  const Vec3 target = committed_->pose.vehicle.position;

  if ((estimated_pose_.position - target).norm() < config_.spray.approach_gate) {
    // One refinement from everything fused during the approach, then the
    // pose stays frozen.
    if (!committed_->refined) {
      auto it = fusers_.find(committed_->handle_id);
      if (it != fusers_.end()) {
        if (const auto fused = it->second.fused(config_.handle_offset)) {
          try {
            committed_->pose = compute_spray_pose(*fused, config_.spray.standoff,
                                                  config_.vehicle.nozzle_offset);
          } catch (const std::invalid_argument&) {
            // keep the committed pose
          }
        }
      }
      committed_->refined = true;
    }
    phase_ = MissionPhase::SprayAim;
    vehicle_.waypoints.clear();
    // Waypoint covers the traverse at full speed; the hold target takes
    // over inside the arrival tolerance for the final precision settle.
    vehicle_.waypoints.push_back(committed_->pose.vehicle.position);
    vehicle_.hold_position = committed_->pose.vehicle.position;
    path_valid_ = false;
    log("aim: " + committed_->handle_id);
    return;
  }

  const bool replan_due = time_ - last_plan_time_ >= config_.planner.replan_period_s;
  if (vehicle_.waypoints.empty() || !path_valid_ || replan_due) {
    if (plan_to(target)) consecutive_plan_failures_ = 0;
    else handle_plan_failure();
  }

  // Keep the handle in the camera frustum on the way in.
  const Vec3 handle_pos = committed_->pose.nozzle_position +
                          config_.spray.standoff * committed_->pose.heading;
  const Vec3 look = handle_pos - estimated_pose_.position;
  if (look.head<2>().norm() > 0.05)
    vehicle_.commanded_yaw = yaw_from_direction(look);
}

void MissionSim::phase_aim() {
  if (!committed_) {
    phase_ = MissionPhase::Explore;
    return;
  }
  const SprayPose& target = committed_->pose;
  if (!vehicle_.hold_position) vehicle_.hold_position = target.vehicle.position;
  vehicle_.commanded_yaw = target.vehicle.yaw;

  // Settle against the commanded hold point; the drift offset is invisible
  // to the controller.
  const double pos_err = (estimated_pose_.position - *vehicle_.hold_position).norm();
  const double yaw_err =
      std::abs(wrap_angle(estimated_pose_.yaw - target.vehicle.yaw));
  if (pos_err >= config_.spray.position_threshold ||
      yaw_err >= deg2rad(config_.spray.aim_tolerance_deg))
    return;

  const auto after = consume(tank_, config_.spray.duration_s);
  if (!after) {
    trigger_land("tank empty", false);
    return;
  }
  tank_ = *after;
  phase_ = MissionPhase::SpraySpraying;
  spray_ticks_ = 0;
  spray_ticks_target_ =
      std::max(1, static_cast<int>(std::lround(config_.spray.duration_s / config_.dt)));
  spray_trace_.clear();
  spray_handle_distances_.clear();
  gt_spray_pose_ =
      ground_truth_spray_pose(scene_, committed_->handle_id, config_.spray.standoff);
  spray_handle_center_ =
      scene_.handles[scene_.handle_index(committed_->handle_id)].center;
  vehicle_.waypoints.clear();  // hold position while the sprayer runs
  log("spraying: " + committed_->handle_id);
}

void MissionSim::phase_spraying() {
  if (spray_ticks_ < spray_ticks_target_) return;

  SprayEvent event;
  event.handle_id = committed_->handle_id;
  event.duration_s = spray_ticks_ * config_.dt;
  event.start_time = spray_trace_.empty() ? time_ : spray_trace_.front().first;
  double err_sum = 0.0;
  for (const auto& [t, err] : spray_trace_) err_sum += err.norm();
  event.mean_error = spray_trace_.empty() ? 0.0 : err_sum / spray_trace_.size();
  double dist_sum = 0.0;
  for (double d : spray_handle_distances_) dist_sum += d;
  event.mean_handle_distance =
      spray_handle_distances_.empty() ? 0.0
                                      : dist_sum / spray_handle_distances_.size();
  // The coverage table was measured at the nominal standoff; spraying from
  // farther away deposits less mass, which acts like a shorter burst.
  const double nominal = deposition_fraction(config_.deposition, config_.spray.standoff);
  const double actual =
      deposition_fraction(config_.deposition, event.mean_handle_distance);
  const double effective =
      nominal > 1e-9 ? event.duration_s * actual / nominal : 0.0;
  event.disinfected =
      effective > 0.0 && is_disinfected(config_.coverage, effective);
  event.error_trace = spray_trace_;
  spray_events_.push_back(std::move(event));

  sprayed_.insert(committed_->handle_id);
  log("sprayed " + committed_->handle_id);
  committed_.reset();
  vehicle_.hold_position.reset();

  phase_ = MissionPhase::ReturnToCorridor;
  return_target_ = corridor_centerline(config_.corridor_p0, config_.corridor_p1,
                                       config_.cruise_altitude,
                                       estimated_pose_.position);
  if (segment_free(grid_, estimated_pose_.position, return_target_,
                   config_.vehicle.half_extents, estimated_pose_.position,
                   config_.planner.unknown_free_radius)) {
    vehicle_.waypoints.clear();
    vehicle_.waypoints.push_back(return_target_);
    path_valid_ = true;
    last_plan_time_ = time_;
  } else if (!plan_to(return_target_)) {
    handle_plan_failure();
  }
  log("return to corridor");
}

void MissionSim::phase_return() {
  if (vehicle_.waypoints.empty()) {
    if ((estimated_pose_.position - return_target_).norm() <
        2.0 * vehicle_.arrival_tolerance) {
      phase_ = MissionPhase::Explore;
      path_valid_ = false;
      last_plan_time_ = -1e9;
      log("explore");
      return;
    }
    if (plan_to(return_target_)) consecutive_plan_failures_ = 0;
    else handle_plan_failure();
  }
  if (!vehicle_.waypoints.empty()) {
    Vec3 dir = vehicle_.waypoints.front() - estimated_pose_.position;
    dir.z() = 0.0;
    if (dir.norm() > 0.05) vehicle_.commanded_yaw = yaw_from_direction(dir);
  }
}

void MissionSim::phase_land() {
  if (!vehicle_.waypoints.empty()) return;
  if (land_success_) {
    phase_ = MissionPhase::Done;
    log("done");
  } else {
    phase_ = MissionPhase::Aborted;
    log("aborted: " + abort_reason_);
  }
}

void MissionSim::update_phase() {
  switch (phase_) {
    case MissionPhase::Takeoff: phase_takeoff(); break;
    case MissionPhase::Explore: phase_explore(); break;
    case MissionPhase::SprayApproach: phase_approach(); break;
    case MissionPhase::SprayAim: phase_aim(); break;
    case MissionPhase::SpraySpraying: phase_spraying(); break;
    case MissionPhase::ReturnToCorridor: phase_return(); break;
    case MissionPhase::Land: phase_land(); break;
    case MissionPhase::Done:
    case MissionPhase::Aborted: break;
  }
}

void MissionSim::step() {
  if (finished()) return;
  const double dt = config_.dt;
  time_ += dt;
  ++tick_;

  vehicle_.battery_remaining_s = std::max(0.0, vehicle_.battery_remaining_s - dt);
  if (vehicle_.battery_remaining_s <= 0.0 && phase_ != MissionPhase::Land)
    trigger_land("low battery", false);

  estimated_pose_ =
      pose_estimate(vehicle_.pose, config_.noise, mix_seed(seed_, kStreamPose, tick_));

  const double sensor_period = phase_ == MissionPhase::SprayApproach
                                   ? config_.approach_sensor_period_s
                                   : config_.sensor_period_s;
  if (time_ - last_sensor_time_ >= sensor_period - 1e-9) sense();

  update_phase();

  // Hover drift as a slow first-order (OU) wander with stationary std
  // hold_jitter_std per axis. The state evolves through the whole flight,
  // so each spray window samples a different drift offset; the offset
  // shows up between trials while the in-window scatter stays small.
  const double sigma = config_.vehicle.hold_jitter_std;
  if (sigma > 0.0) {
    const double a = std::exp(-dt / std::max(1e-3, config_.vehicle.hold_jitter_tau_s));
    const double b = sigma * std::sqrt(1.0 - a * a);
    Rng jitter(mix_seed(seed_, kStreamJitter, tick_));
    for (int i = 0; i < 3; ++i)
      hold_wander_[i] = a * hold_wander_[i] + b * jitter.gaussian();
  }
  if (committed_ && (phase_ == MissionPhase::SprayAim ||
                     phase_ == MissionPhase::SpraySpraying))
    vehicle_.hold_position = committed_->pose.vehicle.position + hold_wander_;

  follow_waypoints(vehicle_, dt);

  if (phase_ == MissionPhase::SpraySpraying) {
    const Vec3 nozzle = true_nozzle_position();
    spray_trace_.emplace_back(time_, nozzle - gt_spray_pose_.position);
    spray_handle_distances_.push_back((nozzle - spray_handle_center_).norm());
    ++spray_ticks_;
  }

  trajectory_.push_back({time_, vehicle_.pose, phase_});
}

void MissionSim::run() {
  const std::uint64_t cap = static_cast<std::uint64_t>(
      (config_.battery_budget_s + 60.0) / config_.dt);
  while (!finished() && tick_ < cap) step();
  if (!finished()) {
    phase_ = MissionPhase::Aborted;
    abort_reason_ = "tick cap exceeded";
    log("aborted: tick cap exceeded");
  }
}

}  // namespace spraysim
