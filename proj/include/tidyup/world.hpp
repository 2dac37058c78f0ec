#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tidyup/geom.hpp"

namespace tidyup::world {

enum class Category { Food, Kitchen, Shape, Tool, Task, Unknown, Boss };

std::string to_string(Category c);
Category category_from_string(const std::string& s);

/// The 21 pixel classes the depth-segmentation network predicts.
enum class SegClass : std::uint8_t {
  Background = 0,
  Wall,
  PickableObject,
  Shelf,
  LeftBin,
  RightBin,
  DrawerFrame,
  BottomDrawer,
  BottomDrawerKnob,
  LeftDrawer,
  LeftDrawerKnob,
  TopDrawer,
  TopDrawerKnob,
  MiscDrawer,
  TallTable,
  LongTableA,
  LongTableB,
  LeftTray,
  RightTray,
  LeftContainer,
  RightContainer,
};
constexpr int kNumSegClasses = 21;

std::string to_string(SegClass c);
bool is_knob_class(SegClass c);
/// The drawer body class a knob sits on (TopDrawerKnob -> TopDrawer, ...).
SegClass drawer_body_for_knob(SegClass knob);

enum class MassClass { Light, Normal };

enum class ObjectLocation { World, Gripper, Stored };

struct SceneObject {
  std::string name;
  Category category = Category::Unknown;
  bool unknown_object = false;  // not listed in the rule book
  geom::Point3 position;        // footprint center, z = bottom face height
  double yaw = 0.0;
  double dim_x = 0.1, dim_y = 0.1, dim_z = 0.1;
  MassClass mass = MassClass::Light;
  bool orientation_sensitive = false;
  std::vector<double> appearance;  // unit norm, consumed by the classifier
  ObjectLocation location = ObjectLocation::World;
  std::string stored_area;  // deposit area name once stored

  geom::OrientedBox box() const;
  double top_z() const { return position.z + dim_z; }
};

enum class Posture { Standing, Sitting };
enum class WavingSide { None, Left, Right };

struct Person {
  std::string name;
  geom::Pose2D pose;
  Posture posture = Posture::Standing;
  WavingSide waving = WavingSide::None;

  double height() const { return posture == Posture::Standing ? 1.7 : 1.3; }
  geom::OrientedBox body_box() const;
};

struct Furniture {
  std::string name;
  SegClass seg = SegClass::Background;
  geom::OrientedBox box;
};

/// Drawer with a sliding body and a knob centered on its face. The body
/// translates along `facing_yaw` as the drawer opens.
struct Drawer {
  std::string name;
  SegClass body_class = SegClass::TopDrawer;
  SegClass knob_class = SegClass::TopDrawerKnob;
  geom::OrientedBox closed_body;
  double facing_yaw = 0.0;   // outward normal of the drawer face
  double open_fraction = 0.0;
  double travel = 0.25;      // meters at open_fraction 1
  double knob_offset_y = 0.0;  // along the face, from body center
  double knob_offset_z = 0.0;  // vertical, from body center
  double knob_size = 0.04;
  double knob_yaw = 0.0;     // knob shape rotation about its axis

  geom::OrientedBox body() const;
  geom::OrientedBox knob() const;
  geom::Point3 knob_center() const;
};

/// Axis-aligned named region of the floor.
struct NamedArea {
  std::string name;
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  bool contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
  double center_x() const { return (min_x + max_x) / 2; }
  double center_y() const { return (min_y + max_y) / 2; }
};

struct RobotState {
  geom::Pose2D pose;
  double radius = 0.25;
  double arm_height = 0.3;
  std::optional<std::string> holding;
};

struct FloorPlan {
  double min_x = 0, min_y = 0, max_x = 10.0, max_y = 5.0;
  double wall_height = 2.0;
  double wall_thickness = 0.1;
  std::vector<Furniture> walls;
  std::vector<Furniture> furniture;
  std::vector<Drawer> drawers;
  std::vector<NamedArea> areas;
  std::map<std::string, std::string> deposit_for_category;  // category -> area name
  geom::Pose2D task1_start;
  geom::Pose2D task2_start;
  std::vector<double> shelf_row_heights;  // z of each shelf row surface

  const NamedArea* find_area(const std::string& name) const;
  const NamedArea& area(const std::string& name) const;  // throws if absent
  const Drawer* find_drawer(const std::string& name) const;
};

struct Scene {
  FloorPlan plan;
  std::vector<SceneObject> objects;
  std::vector<Person> people;
  RobotState robot;
  double clock = 0.0;
  std::uint64_t seed = 0;

  const SceneObject* find_object(const std::string& name) const;
  SceneObject* find_object(const std::string& name);
  int object_index(const std::string& name) const;  // -1 when absent

  /// Support surface height at (x, y): 0 on the floor, the table/shelf top
  /// when (x, y) lies on one.
  double support_height(double x, double y) const;

  /// Throws std::runtime_error when a scene invariant is violated
  /// (object/furniture interpenetration, too many people in the delivery
  /// area, malformed appearance vectors).
  void validate() const;
};

/// Catalog entry for a known competition object.
struct ObjectSpec {
  std::string name;
  Category category;
  double dim_x, dim_y, dim_z;
  MassClass mass;
  bool orientation_sensitive;
  bool food_shelf_item;  // appears on the task-2b shelf
};

const std::vector<ObjectSpec>& object_database();
const ObjectSpec* find_object_spec(const std::string& name);

/// The fixed arena layout with no randomization applied.
FloorPlan nominal_floor_plan();

/// Nominal plan, robot at the task-1 start, no objects or people.
Scene empty_scene();

/// Byte-stable JSON round trip with top-level keys `furniture`, `objects`,
/// `people`, `robot`, `seed` (plus `clock`).
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);
void save_scene(const Scene& scene, const std::string& path);
Scene load_scene(const std::string& path);

/// Strict 2-D overlap of two z-aligned boxes beyond `eps` (their z ranges
/// must also overlap); touching boxes do not count.
bool boxes_interpenetrate(const geom::OrientedBox& a, const geom::OrientedBox& b,
                          double eps = 1e-9);

}  // namespace tidyup::world
