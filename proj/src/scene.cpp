#include "spraysim/scene.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace spraysim {
namespace {

using Json = nlohmann::ordered_json;

Vec3 vec3_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3)
    throw SceneError(what + ": expected an array of 3 numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

SceneModel scene_from_json(const Json& j) {
  SceneModel scene;
  if (!j.contains("bounds")) throw SceneError("scene: missing 'bounds'");
  scene.bounds.min = vec3_from(j.at("bounds").at("min"), "bounds.min");
  scene.bounds.max = vec3_from(j.at("bounds").at("max"), "bounds.max");

  for (const auto& o : j.value("obstacles", Json::array())) {
    Aabb box;
    box.min = vec3_from(o.at("min"), "obstacle.min");
    box.max = vec3_from(o.at("max"), "obstacle.max");
    scene.obstacles.push_back(box);
  }
  for (const auto& d : j.value("doors", Json::array())) {
    DoorSpec door;
    door.id = d.at("id").get<std::string>();
    door.center = vec3_from(d.at("center"), "door.center");
    door.width = d.at("width").get<double>();
    door.height = d.at("height").get<double>();
    door.normal = vec3_from(d.at("normal"), "door.normal");
    scene.doors.push_back(door);
  }
  int handle_counter = 0;
  for (const auto& h : j.value("handles", Json::array())) {
    HandleSpec handle;
    handle.name = "handle" + std::to_string(handle_counter++);
    handle.door = h.at("door").get<std::string>();
    handle.center = vec3_from(h.at("center"), "handle.center");
    if (h.contains("extents")) handle.extents = vec3_from(h.at("extents"), "handle.extents");
    if (h.contains("protrusion")) handle.protrusion = h.at("protrusion").get<double>();
    scene.handles.push_back(handle);
  }
  scene.finalize();
  return scene;
}

}  // namespace

void SceneModel::finalize() {
  if (!bounds.valid()) throw SceneError("scene: bounds min must be <= max");

  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Aabb& o = obstacles[i];
    if (!o.valid())
      throw SceneError("obstacle #" + std::to_string(i) + ": min must be <= max");
    if (!bounds.contains(o))
      throw SceneError("obstacle #" + std::to_string(i) + ": outside world bounds");
  }

  for (std::size_t i = 0; i < doors.size(); ++i) {
    const DoorSpec& d = doors[i];
    if (d.id.empty()) throw SceneError("door #" + std::to_string(i) + ": empty id");
    for (std::size_t k = 0; k < i; ++k)
      if (doors[k].id == d.id) throw SceneError("door '" + d.id + "': duplicate id");
    if (std::abs(d.normal.norm() - 1.0) > 1e-6)
      throw SceneError("door '" + d.id + "': normal must have unit length");
    if (std::abs(d.normal.z()) > 0.9)
      throw SceneError("door '" + d.id + "': normal is near vertical");
    if (d.width <= 0.0 || d.height <= 0.0)
      throw SceneError("door '" + d.id + "': width and height must be positive");
    const Vec3 u = d.u_axis();
    const Vec3 v = d.v_axis();
    for (int su = -1; su <= 1; su += 2)
      for (int sv = -1; sv <= 1; sv += 2) {
        const Vec3 c = d.center + 0.5 * d.width * su * u + 0.5 * d.height * sv * v;
        if (!bounds.contains(c))
          throw SceneError("door '" + d.id + "': corner outside world bounds");
      }
  }

  handle_obbs_.clear();
  for (std::size_t i = 0; i < handles.size(); ++i) {
    const HandleSpec& h = handles[i];
    const std::string who = "handle '" + h.name + "'";
    if (door_index(h.door) < 0)
      throw SceneError(who + ": references missing door '" + h.door + "'");
    if (h.protrusion < 0.0) throw SceneError(who + ": protrusion must be >= 0");
    if (h.extents.minCoeff() <= 0.0)
      throw SceneError(who + ": extents must be positive");

    const DoorSpec& d = door_of(h);
    const double off_plane = d.normal.dot(h.center) - d.plane_offset();
    if (std::abs(off_plane - h.protrusion) > 1e-6)
      throw SceneError(who + ": center must sit 'protrusion' meters off the door plane of '" +
                       d.id + "'");
    // Box must reach back to the door face...
    if (h.protrusion - 0.5 * h.extents.x() > 1e-9)
      throw SceneError(who + ": box does not reach the door plane (protrusion > half depth)");
    // ...and its footprint must lie inside the door rectangle.
    const Vec3 rel = h.center - d.center;
    const double cu = std::abs(d.u_axis().dot(rel)) + 0.5 * h.extents.y();
    const double cv = std::abs(d.v_axis().dot(rel)) + 0.5 * h.extents.z();
    if (cu > 0.5 * d.width + 1e-9 || cv > 0.5 * d.height + 1e-9)
      throw SceneError(who + ": box footprint outside door rectangle of '" + d.id + "'");

    Obb obb;
    obb.center = h.center;
    obb.axes.col(0) = d.normal;
    obb.axes.col(1) = d.u_axis();
    obb.axes.col(2) = d.v_axis();
    obb.half = 0.5 * h.extents;
    for (int c = 0; c < 8; ++c)
      if (!bounds.contains(obb.corner(c)))
        throw SceneError(who + ": box outside world bounds");
    handle_obbs_.push_back(obb);
  }
}

int SceneModel::door_index(const std::string& id) const {
  for (std::size_t i = 0; i < doors.size(); ++i)
    if (doors[i].id == id) return static_cast<int>(i);
  return -1;
}

int SceneModel::handle_index(const std::string& name) const {
  for (std::size_t i = 0; i < handles.size(); ++i)
    if (handles[i].name == name) return static_cast<int>(i);
  return -1;
}

const DoorSpec& SceneModel::door_of(const HandleSpec& h) const {
  const int idx = door_index(h.door);
  if (idx < 0) throw SceneError("handle '" + h.name + "': missing door '" + h.door + "'");
  return doors[idx];
}

std::optional<SceneHit> SceneModel::raycast(const Vec3& origin, const Vec3& dir,
                                            double t_max, SceneHit::Kind exclude_kind,
                                            int exclude_index) const {
  std::optional<SceneHit> best;
  auto consider = [&](double t, SceneHit::Kind kind, int index) {
    if (t <= 1e-9 || t > t_max) return;
    if (!best || t < best->t) best = SceneHit{t, kind, index};
  };

  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (exclude_kind == SceneHit::Kind::Obstacle && exclude_index == static_cast<int>(i))
      continue;
    if (auto t = ray_aabb(origin, dir, obstacles[i], t_max))
      consider(*t, SceneHit::Kind::Obstacle, static_cast<int>(i));
  }
  for (std::size_t i = 0; i < doors.size(); ++i) {
    if (exclude_kind == SceneHit::Kind::Door && exclude_index == static_cast<int>(i))
      continue;
    const DoorSpec& d = doors[i];
    const double denom = d.normal.dot(dir);
    if (std::abs(denom) < 1e-12) continue;
    const double t = (d.plane_offset() - d.normal.dot(origin)) / denom;
    if (t <= 1e-9 || t > t_max) continue;
    const Vec3 q = origin + t * dir - d.center;
    if (std::abs(d.u_axis().dot(q)) <= 0.5 * d.width &&
        std::abs(d.v_axis().dot(q)) <= 0.5 * d.height)
      consider(t, SceneHit::Kind::Door, static_cast<int>(i));
  }
  for (std::size_t i = 0; i < handle_obbs_.size(); ++i) {
    if (exclude_kind == SceneHit::Kind::Handle && exclude_index == static_cast<int>(i))
      continue;
    if (auto t = ray_obb(origin, dir, handle_obbs_[i], t_max))
      consider(*t, SceneHit::Kind::Handle, static_cast<int>(i));
  }
  return best;
}

SceneModel parse_scene(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SceneError("scene parse error near line " +
                     std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  return scene_from_json(j);
}

SceneModel load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string scene_to_text(const SceneModel& scene) {
  Json j;
  j["bounds"] = {{"min", to_json(scene.bounds.min)}, {"max", to_json(scene.bounds.max)}};
  j["obstacles"] = Json::array();
  for (const auto& o : scene.obstacles)
    j["obstacles"].push_back({{"min", to_json(o.min)}, {"max", to_json(o.max)}});
  j["doors"] = Json::array();
  for (const auto& d : scene.doors)
    j["doors"].push_back({{"id", d.id},
                          {"center", to_json(d.center)},
                          {"width", d.width},
                          {"height", d.height},
                          {"normal", to_json(d.normal)}});
  j["handles"] = Json::array();
  for (const auto& h : scene.handles)
    j["handles"].push_back({{"door", h.door},
                            {"center", to_json(h.center)},
                            {"extents", to_json(h.extents)},
                            {"protrusion", h.protrusion}});
  return j.dump(2) + "\n";
}

void save_scene(const SceneModel& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SceneError("cannot write scene file: " + path);
  out << scene_to_text(scene);
}

Pose ground_truth_spray_pose(const SceneModel& scene, const std::string& handle_name,
                             double standoff) {
  const int idx = scene.handle_index(handle_name);
  if (idx < 0) throw SceneError("unknown handle id: " + handle_name);
  const HandleSpec& h = scene.handles[idx];
  const DoorSpec& d = scene.door_of(h);
  Pose pose;
  pose.position = h.center + standoff * d.normal;
  pose.yaw = yaw_from_direction(-d.normal);
  return pose;
}

SceneModel default_hallway_scene() {
  SceneModel scene;
  scene.bounds = {{-0.5, -1.4, -0.2}, {10.5, 1.4, 2.8}};

  // Floor, two side walls, far end wall. The corridor interior is
  // 10 m x 2.2 m x 2.6 m, running along +x.
  scene.obstacles.push_back({{-0.5, -1.4, -0.2}, {10.5, 1.4, 0.0}});    // floor
  scene.obstacles.push_back({{-0.5, -1.4, 0.0}, {10.5, -1.1, 2.6}});    // right wall
  scene.obstacles.push_back({{-0.5, 1.1, 0.0}, {10.5, 1.4, 2.6}});      // left wall
  scene.obstacles.push_back({{10.1, -1.1, 0.0}, {10.5, 1.1, 2.6}});     // end wall

  DoorSpec door;
  door.id = "door0";
  door.center = {5.0, -1.1, 1.0};
  door.width = 0.9;
  door.height = 2.0;
  door.normal = {0.0, 1.0, 0.0};  // faces into the corridor
  scene.doors.push_back(door);

  // Protruding door frame. Off-plane points from the frame leak into the
  // handle region at oblique views, which is the dominant real-world
  // localization error source.
  scene.obstacles.push_back({{4.49, -1.1, 0.0}, {4.55, -1.075, 2.06}});
  scene.obstacles.push_back({{5.45, -1.1, 0.0}, {5.51, -1.075, 2.06}});
  scene.obstacles.push_back({{4.49, -1.1, 2.0}, {5.51, -1.075, 2.06}});

  HandleSpec handle;
  handle.door = "door0";
  handle.name = "handle0";
  handle.center = {5.36, -1.04, 1.0};  // lever near the latch edge, 1 m up
  handle.extents = {0.12, 0.04, 0.04};
  handle.protrusion = 0.06;
  scene.handles.push_back(handle);

  scene.finalize();
  return scene;
}

}  // namespace spraysim
