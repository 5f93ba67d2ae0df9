#include "spraysim/mission.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace spraysim {
namespace {

using Json = nlohmann::ordered_json;

void read(const Json& j, const char* key, double& out) {
  if (j.contains(key)) out = j.at(key).get<double>();
}
void read(const Json& j, const char* key, int& out) {
  if (j.contains(key)) out = j.at(key).get<int>();
}
void read(const Json& j, const char* key, std::uint64_t& out) {
  if (j.contains(key)) out = j.at(key).get<std::uint64_t>();
}
void read(const Json& j, const char* key, Vec3& out) {
  if (!j.contains(key)) return;
  const Json& a = j.at(key);
  if (!a.is_array() || a.size() != 3)
    throw ConfigError(std::string("config: '") + key + "' must be an array of 3 numbers");
  out = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

MissionConfig config_from_json(const Json& j) {
  MissionConfig c;
  read(j, "final_goal", c.final_goal);
  read(j, "cruise_altitude", c.cruise_altitude);
  read(j, "goal_tolerance", c.goal_tolerance);
  read(j, "dt", c.dt);
  read(j, "sensor_period", c.sensor_period_s);
  read(j, "approach_sensor_period", c.approach_sensor_period_s);
  read(j, "map_stride", c.map_stride);
  read(j, "segment_stride", c.segment_stride);
  read(j, "max_door_cloud_points", c.max_door_cloud_points);
  read(j, "map_resolution", c.map_resolution);
  read(j, "handle_offset", c.handle_offset);
  read(j, "battery_budget", c.battery_budget_s);
  read(j, "land_altitude", c.land_altitude);
  read(j, "seed", c.seed);

  if (j.contains("corridor")) {
    const Json& k = j.at("corridor");
    read(k, "p0", c.corridor_p0);
    read(k, "p1", c.corridor_p1);
  }
  if (j.contains("start_region")) {
    const Json& k = j.at("start_region");
    read(k, "min", c.start_region.min);
    read(k, "max", c.start_region.max);
    if (!c.start_region.valid()) throw ConfigError("config: invalid start_region");
  }
  if (j.contains("spray")) {
    const Json& k = j.at("spray");
    read(k, "duration", c.spray.duration_s);
    read(k, "standoff", c.spray.standoff);
    read(k, "approach_gate", c.spray.approach_gate);
    read(k, "threshold", c.spray.position_threshold);
    read(k, "aim_tolerance_deg", c.spray.aim_tolerance_deg);
  }
  if (j.contains("vehicle")) {
    const Json& k = j.at("vehicle");
    read(k, "max_speed", c.vehicle.max_speed);
    read(k, "max_yaw_rate", c.vehicle.max_yaw_rate);
    read(k, "half_extents", c.vehicle.half_extents);
    read(k, "nozzle_offset", c.vehicle.nozzle_offset);
    read(k, "arrival_tolerance", c.vehicle.arrival_tolerance);
    read(k, "hold_jitter_std", c.vehicle.hold_jitter_std);
  }
  if (j.contains("noise")) {
    const Json& k = j.at("noise");
    read(k, "depth_std", c.noise.depth_std);
    read(k, "pos_std", c.noise.pos_std);
    read(k, "yaw_std", c.noise.yaw_std);
    read(k, "detect_false_negative", c.noise.detect_false_negative);
    read(k, "bbox_jitter_px", c.noise.bbox_jitter_px);
  }
  if (j.contains("camera")) {
    const Json& k = j.at("camera");
    read(k, "width", c.camera.intrinsics.width);
    read(k, "height", c.camera.intrinsics.height);
    read(k, "hfov", c.camera.intrinsics.hfov);
    read(k, "vfov", c.camera.intrinsics.vfov);
    read(k, "max_range", c.camera.intrinsics.max_range);
    read(k, "detect_range", c.camera.detect_range);
    read(k, "mission_downscale", c.camera.mission_downscale);
  }
  if (j.contains("yaw_scan")) {
    const Json& k = j.at("yaw_scan");
    read(k, "amplitude", c.yaw_scan.amplitude);
    read(k, "rate", c.yaw_scan.rate);
  }
  if (j.contains("fusion")) {
    const Json& k = j.at("fusion");
    read(k, "stable_count", c.fusion.stable_count);
    read(k, "reject_radius", c.fusion.reject_radius);
    read(k, "window", c.fusion.window);
  }
  if (j.contains("planner")) {
    const Json& k = j.at("planner");
    read(k, "max_iterations", c.planner.max_iterations);
    read(k, "step_size", c.planner.step_size);
    read(k, "goal_bias", c.planner.goal_bias);
    read(k, "rewire_radius", c.planner.rewire_radius);
    read(k, "goal_tolerance", c.planner.goal_tolerance);
    read(k, "replan_period", c.planner.replan_period_s);
    read(k, "unknown_free_radius", c.planner.unknown_free_radius);
    read(k, "max_consecutive_failures", c.planner.max_consecutive_failures);
    read(k, "simplify_attempts", c.planner.simplify_attempts);
  }
  if (j.contains("ransac")) {
    const Json& k = j.at("ransac");
    read(k, "threshold", c.ransac.inlier_threshold);
    read(k, "iterations", c.ransac.iterations);
    read(k, "min_inlier_fraction", c.ransac.min_inlier_fraction);
  }
  if (j.contains("tank")) {
    const Json& k = j.at("tank");
    read(k, "capacity_ml", c.tank.capacity_ml);
    read(k, "remaining_ml", c.tank.remaining_ml);
    read(k, "flow_rate_ml_per_min", c.tank.flow_rate_ml_per_min);
    if (!j.at("tank").contains("remaining_ml")) c.tank.remaining_ml = c.tank.capacity_ml;
  }
  if (j.contains("coverage")) {
    const Json& k = j.at("coverage");
    if (k.contains("table")) {
      c.coverage.table.clear();
      for (const auto& row : k.at("table")) {
        if (!row.is_array() || row.size() != 3)
          throw ConfigError("config: coverage table rows must be [duration, c0, c60]");
        c.coverage.table.push_back(
            {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
      }
    }
    read(k, "required_fraction", c.coverage.required_fraction);
    read(k, "persistence", c.coverage.persistence_s);
  }
  if (j.contains("deposition")) {
    const Json& k = j.at("deposition");
    if (k.contains("anchors")) {
      c.deposition.anchors.clear();
      for (const auto& a : k.at("anchors")) {
        if (!a.is_array() || a.size() != 2)
          throw ConfigError("config: deposition anchors must be [distance, fraction]");
        c.deposition.anchors.emplace_back(a[0].get<double>(), a[1].get<double>());
      }
    }
    read(k, "cutoff_distance", c.deposition.cutoff_distance);
  }

  try {
    validate(c.coverage);
    validate(c.deposition);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.dt <= 0.0) throw ConfigError("config: dt must be > 0");
  if (c.spray.duration_s <= 0.0) throw ConfigError("config: spray duration must be > 0");
  if (c.map_resolution <= 0.0) throw ConfigError("config: map_resolution must be > 0");
  if (c.battery_budget_s <= 0.0) throw ConfigError("config: battery_budget must be > 0");
  return c;
}

}  // namespace

MissionConfig parse_mission_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("mission config parse error: ") + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("mission config error: ") + e.what());
  }
}

MissionConfig load_mission_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mission config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mission_config(ss.str());
}

std::string mission_config_to_text(const MissionConfig& c) {
  Json j;
  j["final_goal"] = to_json(c.final_goal);
  j["cruise_altitude"] = c.cruise_altitude;
  j["goal_tolerance"] = c.goal_tolerance;
  j["dt"] = c.dt;
  j["sensor_period"] = c.sensor_period_s;
  j["approach_sensor_period"] = c.approach_sensor_period_s;
  j["map_stride"] = c.map_stride;
  j["segment_stride"] = c.segment_stride;
  j["max_door_cloud_points"] = c.max_door_cloud_points;
  j["map_resolution"] = c.map_resolution;
  j["handle_offset"] = c.handle_offset;
  j["battery_budget"] = c.battery_budget_s;
  j["land_altitude"] = c.land_altitude;
  j["seed"] = c.seed;
  j["corridor"] = {{"p0", to_json(c.corridor_p0)}, {"p1", to_json(c.corridor_p1)}};
  j["start_region"] = {{"min", to_json(c.start_region.min)},
                       {"max", to_json(c.start_region.max)}};
  j["spray"] = {{"duration", c.spray.duration_s},
                {"standoff", c.spray.standoff},
                {"approach_gate", c.spray.approach_gate},
                {"threshold", c.spray.position_threshold},
                {"aim_tolerance_deg", c.spray.aim_tolerance_deg}};
  j["vehicle"] = {{"max_speed", c.vehicle.max_speed},
                  {"max_yaw_rate", c.vehicle.max_yaw_rate},
                  {"half_extents", to_json(c.vehicle.half_extents)},
                  {"nozzle_offset", to_json(c.vehicle.nozzle_offset)},
                  {"arrival_tolerance", c.vehicle.arrival_tolerance},
                  {"hold_jitter_std", c.vehicle.hold_jitter_std}};
  j["noise"] = {{"depth_std", c.noise.depth_std},
                {"pos_std", c.noise.pos_std},
                {"yaw_std", c.noise.yaw_std},
                {"detect_false_negative", c.noise.detect_false_negative},
                {"bbox_jitter_px", c.noise.bbox_jitter_px}};
  j["camera"] = {{"width", c.camera.intrinsics.width},
                 {"height", c.camera.intrinsics.height},
                 {"hfov", c.camera.intrinsics.hfov},
                 {"vfov", c.camera.intrinsics.vfov},
                 {"max_range", c.camera.intrinsics.max_range},
                 {"detect_range", c.camera.detect_range},
                 {"mission_downscale", c.camera.mission_downscale}};
  j["yaw_scan"] = {{"amplitude", c.yaw_scan.amplitude}, {"rate", c.yaw_scan.rate}};
  j["fusion"] = {{"stable_count", c.fusion.stable_count},
                 {"reject_radius", c.fusion.reject_radius},
                 {"window", c.fusion.window}};
  j["planner"] = {{"max_iterations", c.planner.max_iterations},
                  {"step_size", c.planner.step_size},
                  {"goal_bias", c.planner.goal_bias},
                  {"rewire_radius", c.planner.rewire_radius},
                  {"goal_tolerance", c.planner.goal_tolerance},
                  {"replan_period", c.planner.replan_period_s},
                  {"unknown_free_radius", c.planner.unknown_free_radius},
                  {"max_consecutive_failures", c.planner.max_consecutive_failures},
                  {"simplify_attempts", c.planner.simplify_attempts}};
  j["ransac"] = {{"threshold", c.ransac.inlier_threshold},
                 {"iterations", c.ransac.iterations},
                 {"min_inlier_fraction", c.ransac.min_inlier_fraction}};
  j["tank"] = {{"capacity_ml", c.tank.capacity_ml},
               {"flow_rate_ml_per_min", c.tank.flow_rate_ml_per_min}};
  Json table = Json::array();
  for (const auto& row : c.coverage.table)
    table.push_back(Json::array({row.duration_s, row.initial, row.at_60s}));
  j["coverage"] = {{"table", table},
                   {"required_fraction", c.coverage.required_fraction},
                   {"persistence", c.coverage.persistence_s}};
  Json anchors = Json::array();
  for (const auto& [d, f] : c.deposition.anchors)
    anchors.push_back(Json::array({d, f}));
  j["deposition"] = {{"anchors", anchors},
                     {"cutoff_distance", c.deposition.cutoff_distance}};
  return j.dump(2) + "\n";
}

}  // namespace spraysim
