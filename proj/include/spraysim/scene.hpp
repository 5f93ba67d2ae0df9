#pragma once

#include "spraysim/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spraysim {

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Planar rectangle flush with a wall, described by its center, in-plane
// size, and outward unit normal (normal points into the corridor).
struct DoorSpec {
  std::string id;
  Vec3 center{0.0, 0.0, 0.0};
  double width = 0.9;
  double height = 2.0;
  Vec3 normal{0.0, 1.0, 0.0};

  double plane_offset() const { return normal.dot(center); }
  // Horizontal in-plane axis.
  Vec3 u_axis() const { return Vec3::UnitZ().cross(normal).normalized(); }
  // In-plane axis completing the right-handed frame (vertical for an
  // upright door).
  Vec3 v_axis() const { return normal.cross(u_axis()); }
};

// Small box on a door face. `extents` are full sizes in the door frame,
// ordered [along outward normal, along u_axis, along v_axis]; the center
// sits `protrusion` meters in front of the door plane.
struct HandleSpec {
  std::string name;  // synthesized "handleN" when loaded from file
  std::string door;
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 extents{0.12, 0.04, 0.04};
  double protrusion = 0.06;
};

struct SceneHit {
  enum class Kind { Obstacle, Door, Handle };
  double t = 0.0;
  Kind kind = Kind::Obstacle;
  int index = -1;
};

struct SceneModel {
  Aabb bounds;
  std::vector<Aabb> obstacles;
  std::vector<DoorSpec> doors;
  std::vector<HandleSpec> handles;

  // Validates all invariants and rebuilds cached geometry. Must be called
  // after manual construction; load_scene does it for you.
  void finalize();

  int door_index(const std::string& id) const;
  int handle_index(const std::string& name) const;
  const DoorSpec& door_of(const HandleSpec& h) const;
  Obb handle_obb(int handle_idx) const { return handle_obbs_.at(handle_idx); }

  // Nearest surface along origin + t*dir (dir unit), t in (0, t_max].
  // One object may be excluded, e.g. for occlusion tests against itself.
  std::optional<SceneHit> raycast(const Vec3& origin, const Vec3& dir, double t_max,
                                  SceneHit::Kind exclude_kind = SceneHit::Kind::Obstacle,
                                  int exclude_index = -1) const;

 private:
  std::vector<Obb> handle_obbs_;
};

SceneModel load_scene(const std::string& path);
SceneModel parse_scene(const std::string& text);  // same format, in-memory
void save_scene(const SceneModel& scene, const std::string& path);
std::string scene_to_text(const SceneModel& scene);

// Pose placing the nozzle frame `standoff` meters from the handle center
// along its door's outward normal, heading anti-parallel to the normal.
Pose ground_truth_spray_pose(const SceneModel& scene, const std::string& handle_name,
                             double standoff = 0.30);

// The stock test world: a straight corridor with one door and one handle on
// the right-hand wall.
SceneModel default_hallway_scene();

}  // namespace spraysim
