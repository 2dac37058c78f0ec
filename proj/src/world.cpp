#include "tidyup/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tidyup::world {

using geom::OrientedBox;
using geom::Point3;
using geom::Pose2D;
using nlohmann::json;

std::string to_string(Category c) {
  switch (c) {
    case Category::Food: return "Food";
    case Category::Kitchen: return "Kitchen";
    case Category::Shape: return "Shape";
    case Category::Tool: return "Tool";
    case Category::Task: return "Task";
    case Category::Unknown: return "Unknown";
    case Category::Boss: return "Boss";
  }
  throw std::logic_error("bad Category");
}

Category category_from_string(const std::string& s) {
  for (Category c : {Category::Food, Category::Kitchen, Category::Shape, Category::Tool,
                     Category::Task, Category::Unknown, Category::Boss})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown category: " + s);
}

std::string to_string(SegClass c) {
  static const char* names[kNumSegClasses] = {
      "Background",        "Wall",
      "Pickable object",   "Shelf",
      "Left bin",          "Right bin",
      "Drawer frame",      "Bottom drawer",
      "Bottom drawer knob", "Left drawer",
      "Left drawer knob",  "Top drawer",
      "Top drawer knob",   "Miscellaneous drawer",
      "Tall table",        "Long table A",
      "Long table B",      "Left tray",
      "Right tray",        "Left container",
      "Right container"};
  const int i = static_cast<int>(c);
  if (i < 0 || i >= kNumSegClasses) throw std::logic_error("bad SegClass");
  return names[i];
}

bool is_knob_class(SegClass c) {
  return c == SegClass::BottomDrawerKnob || c == SegClass::LeftDrawerKnob ||
         c == SegClass::TopDrawerKnob;
}

SegClass drawer_body_for_knob(SegClass knob) {
  switch (knob) {
    case SegClass::BottomDrawerKnob: return SegClass::BottomDrawer;
    case SegClass::LeftDrawerKnob: return SegClass::LeftDrawer;
    case SegClass::TopDrawerKnob: return SegClass::TopDrawer;
    default: throw std::invalid_argument("not a knob class");
  }
}

OrientedBox SceneObject::box() const {
  return OrientedBox{{position.x, position.y, position.z + dim_z / 2}, dim_x, dim_y, dim_z, yaw};
}

OrientedBox Person::body_box() const {
  return OrientedBox{{pose.x, pose.y, height() / 2}, 0.45, 0.35, height(), pose.yaw};
}

OrientedBox Drawer::body() const {
  OrientedBox b = closed_body;
  const double d = open_fraction * travel;
  b.center.x += d * std::cos(facing_yaw);
  b.center.y += d * std::sin(facing_yaw);
  return b;
}

OrientedBox Drawer::knob() const {
  return OrientedBox{knob_center(), knob_size, knob_size, knob_size,
                     geom::normalize_angle(facing_yaw + knob_yaw)};
}

Point3 Drawer::knob_center() const {
  const OrientedBox b = body();
  // Face center pushed out along the facing direction, then offset along
  // the face (left of facing) and vertically.
  const double cx = std::cos(facing_yaw), sx = std::sin(facing_yaw);
  const double face = b.size_x / 2 + knob_size / 2;
  return Point3{b.center.x + face * cx - knob_offset_y * sx,
                b.center.y + face * sx + knob_offset_y * cx,
                b.center.z + knob_offset_z};
}

const NamedArea* FloorPlan::find_area(const std::string& name) const {
  for (const NamedArea& a : areas)
    if (a.name == name) return &a;
  return nullptr;
}

const NamedArea& FloorPlan::area(const std::string& name) const {
  const NamedArea* a = find_area(name);
  if (!a) throw std::runtime_error("no such area: " + name);
  return *a;
}

const Drawer* FloorPlan::find_drawer(const std::string& name) const {
  for (const Drawer& d : drawers)
    if (d.name == name) return &d;
  return nullptr;
}

const SceneObject* Scene::find_object(const std::string& name) const {
  for (const SceneObject& o : objects)
    if (o.name == name) return &o;
  return nullptr;
}

SceneObject* Scene::find_object(const std::string& name) {
  for (SceneObject& o : objects)
    if (o.name == name) return &o;
  return nullptr;
}

int Scene::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].name == name) return static_cast<int>(i);
  return -1;
}

double Scene::support_height(double x, double y) const {
  double h = 0.0;
  for (const Furniture& f : plan.furniture) {
    if (f.seg == SegClass::Wall || f.seg == SegClass::Shelf) continue;
    const OrientedBox& b = f.box;
    const double c = std::cos(-b.yaw), s = std::sin(-b.yaw);
    const double lx = c * (x - b.center.x) - s * (y - b.center.y);
    const double ly = s * (x - b.center.x) + c * (y - b.center.y);
    if (std::abs(lx) <= b.size_x / 2 && std::abs(ly) <= b.size_y / 2)
      h = std::max(h, b.center.z + b.size_z / 2);
  }
  return h;
}

namespace {

/// 2-D separating-axis test on the two boxes' face normals.
bool footprints_overlap(const OrientedBox& a, const OrientedBox& b, double eps) {
  const OrientedBox* boxes[2] = {&a, &b};
  for (const OrientedBox* axis_box : boxes) {
    const double axes[2] = {axis_box->yaw, axis_box->yaw + geom::kPi / 2};
    for (double ang : axes) {
      const double ux = std::cos(ang), uy = std::sin(ang);
      double lo[2], hi[2];
      for (int i = 0; i < 2; ++i) {
        const OrientedBox* box = boxes[i];
        const double c = std::cos(box->yaw), s = std::sin(box->yaw);
        const double ex = box->size_x / 2 * std::abs(ux * c + uy * s);
        const double ey = box->size_y / 2 * std::abs(-ux * s + uy * c);
        const double mid = ux * box->center.x + uy * box->center.y;
        lo[i] = mid - ex - ey;
        hi[i] = mid + ex + ey;
      }
      if (hi[0] <= lo[1] + eps || hi[1] <= lo[0] + eps) return false;
    }
  }
  return true;
}

}  // namespace

bool boxes_interpenetrate(const OrientedBox& a, const OrientedBox& b, double eps) {
  const double az0 = a.center.z - a.size_z / 2, az1 = a.center.z + a.size_z / 2;
  const double bz0 = b.center.z - b.size_z / 2, bz1 = b.center.z + b.size_z / 2;
  if (az1 <= bz0 + eps || bz1 <= az0 + eps) return false;
  return footprints_overlap(a, b, eps);
}

void Scene::validate() const {
  for (const SceneObject& o : objects) {
    if (o.location != ObjectLocation::World) continue;
    for (const Furniture& f : plan.furniture)
      if (boxes_interpenetrate(o.box(), f.box, 1e-6))
        throw std::runtime_error("scene invariant: object '" + o.name +
                                 "' interpenetrates furniture '" + f.name + "'");
    for (const Furniture& w : plan.walls)
      if (boxes_interpenetrate(o.box(), w.box, 1e-6))
        throw std::runtime_error("scene invariant: object '" + o.name + "' inside wall");
    if (!o.appearance.empty()) {
      double n2 = 0;
      for (double v : o.appearance) n2 += v * v;
      if (std::abs(n2 - 1.0) > 1e-6)
        throw std::runtime_error("scene invariant: appearance of '" + o.name +
                                 "' is not unit norm");
    }
  }
  const NamedArea* delivery = plan.find_area("delivery_area");
  if (delivery) {
    int inside = 0;
    for (const Person& p : people)
      if (delivery->contains(p.pose.x, p.pose.y)) ++inside;
    if (inside > 2)
      throw std::runtime_error("scene invariant: more than two people in the delivery area");
  }
}

namespace {

// Rough YCB-scale footprints in meters. Categories follow the competition
// sheets (markers are tools, cups and tableware kitchen, balls shapes).
const std::vector<ObjectSpec> kObjectDatabase = {
    {"chips can", Category::Food, 0.08, 0.08, 0.23, MassClass::Light, false, true},
    {"master chef can", Category::Food, 0.10, 0.10, 0.14, MassClass::Normal, false, true},
    {"cracker box", Category::Food, 0.16, 0.06, 0.21, MassClass::Light, false, true},
    {"sugar box", Category::Food, 0.09, 0.04, 0.18, MassClass::Light, false, true},
    {"tomato soup can", Category::Food, 0.07, 0.07, 0.10, MassClass::Normal, false, true},
    {"mustard bottle", Category::Food, 0.09, 0.06, 0.19, MassClass::Light, false, true},
    {"tuna fish can", Category::Food, 0.09, 0.09, 0.03, MassClass::Light, false, true},
    {"pudding box", Category::Food, 0.11, 0.09, 0.04, MassClass::Light, false, true},
    {"gelatin box", Category::Food, 0.09, 0.07, 0.03, MassClass::Light, false, true},
    {"potted meat can", Category::Food, 0.10, 0.06, 0.08, MassClass::Normal, false, true},
    {"banana", Category::Food, 0.19, 0.04, 0.04, MassClass::Light, false, true},
    {"strawberry", Category::Food, 0.05, 0.05, 0.04, MassClass::Light, false, true},
    {"apple", Category::Food, 0.08, 0.08, 0.07, MassClass::Light, false, true},
    {"lemon", Category::Food, 0.07, 0.05, 0.05, MassClass::Light, false, true},
    {"peach", Category::Food, 0.06, 0.06, 0.06, MassClass::Light, false, true},
    {"pear", Category::Food, 0.07, 0.07, 0.10, MassClass::Light, false, true},
    {"orange", Category::Food, 0.07, 0.07, 0.07, MassClass::Light, false, true},
    {"plum", Category::Food, 0.05, 0.05, 0.05, MassClass::Light, false, true},
    {"pitcher base", Category::Kitchen, 0.11, 0.11, 0.24, MassClass::Normal, false, false},
    {"pitcher lid", Category::Kitchen, 0.12, 0.12, 0.02, MassClass::Light, false, false},
    {"bleach cleanser", Category::Kitchen, 0.10, 0.06, 0.25, MassClass::Normal, false, false},
    {"windex bottle", Category::Kitchen, 0.10, 0.06, 0.27, MassClass::Normal, false, false},
    {"wine glass", Category::Kitchen, 0.08, 0.08, 0.14, MassClass::Light, false, false},
    {"bowl", Category::Kitchen, 0.16, 0.16, 0.05, MassClass::Light, false, false},
    {"mug", Category::Kitchen, 0.12, 0.09, 0.08, MassClass::Light, false, false},
    {"sponge", Category::Kitchen, 0.12, 0.08, 0.02, MassClass::Light, false, false},
    {"plate", Category::Kitchen, 0.26, 0.26, 0.02, MassClass::Light, false, false},
    {"fork", Category::Kitchen, 0.20, 0.03, 0.02, MassClass::Light, true, false},
    {"spoon", Category::Kitchen, 0.22, 0.03, 0.02, MassClass::Light, true, false},
    {"spatula", Category::Kitchen, 0.35, 0.08, 0.02, MassClass::Light, true, false},
    {"cups", Category::Kitchen, 0.09, 0.09, 0.08, MassClass::Light, false, false},
    {"key", Category::Tool, 0.06, 0.02, 0.005, MassClass::Light, false, false},
    {"large marker", Category::Tool, 0.12, 0.02, 0.02, MassClass::Light, true, false},
    {"small marker", Category::Tool, 0.09, 0.015, 0.015, MassClass::Light, true, false},
    {"plastic bolt", Category::Tool, 0.08, 0.03, 0.03, MassClass::Light, false, false},
    {"medium clamp", Category::Tool, 0.12, 0.06, 0.03, MassClass::Light, false, false},
    {"large clamp", Category::Tool, 0.17, 0.08, 0.04, MassClass::Light, false, false},
    {"card", Category::Shape, 0.09, 0.06, 0.001, MassClass::Light, false, false},
    {"ball", Category::Shape, 0.07, 0.07, 0.07, MassClass::Light, false, false},
    {"softball", Category::Shape, 0.10, 0.10, 0.10, MassClass::Light, false, false},
    {"tennis ball", Category::Shape, 0.065, 0.065, 0.065, MassClass::Light, false, false},
    {"racket ball", Category::Shape, 0.056, 0.056, 0.056, MassClass::Light, false, false},
    {"mini soccer ball", Category::Shape, 0.14, 0.14, 0.14, MassClass::Light, false, false},
    {"rope", Category::Shape, 0.20, 0.10, 0.04, MassClass::Light, false, false},
    {"chain", Category::Shape, 0.15, 0.08, 0.02, MassClass::Light, false, false},
    {"foam brick", Category::Shape, 0.05, 0.08, 0.05, MassClass::Light, false, false},
    {"dice", Category::Shape, 0.016, 0.016, 0.016, MassClass::Light, false, false},
    {"marbles", Category::Shape, 0.04, 0.04, 0.02, MassClass::Light, false, false},
    {"wood block", Category::Shape, 0.09, 0.09, 0.20, MassClass::Normal, false, false},
    {"9 hole peg test", Category::Task, 0.25, 0.25, 0.05, MassClass::Normal, false, false},
    {"toy airplane", Category::Task, 0.22, 0.27, 0.08, MassClass::Light, false, false},
    {"magazine", Category::Task, 0.26, 0.19, 0.003, MassClass::Light, false, false},
    {"t-shirt", Category::Task, 0.25, 0.20, 0.05, MassClass::Light, false, false},
    {"lego duplo", Category::Task, 0.06, 0.03, 0.02, MassClass::Light, false, false},
    {"timer", Category::Task, 0.08, 0.06, 0.04, MassClass::Light, false, false},
    {"rubiks cube", Category::Task, 0.057, 0.057, 0.057, MassClass::Light, false, false},
    {"boss", Category::Boss, 0.12, 0.30, 0.12, MassClass::Normal, false, false},
};

}  // namespace

const std::vector<ObjectSpec>& object_database() { return kObjectDatabase; }

const ObjectSpec* find_object_spec(const std::string& name) {
  for (const ObjectSpec& s : kObjectDatabase)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

Furniture make_box(std::string name, SegClass seg, double cx, double cy, double cz, double sx,
                   double sy, double sz, double yaw = 0.0) {
  return Furniture{std::move(name), seg, OrientedBox{{cx, cy, cz}, sx, sy, sz, yaw}};
}

}  // namespace

FloorPlan nominal_floor_plan() {
  FloorPlan p;
  p.min_x = 0.0;
  p.min_y = 0.0;
  p.max_x = 10.0;
  p.max_y = 5.0;
  p.wall_height = 2.0;
  p.wall_thickness = 0.1;

  const double t = p.wall_thickness, h = p.wall_height;
  p.walls = {
      make_box("wall_south", SegClass::Wall, 5.0, -t / 2, h / 2, 10.0 + 2 * t, t, h),
      make_box("wall_north", SegClass::Wall, 5.0, 5.0 + t / 2, h / 2, 10.0 + 2 * t, t, h),
      make_box("wall_west", SegClass::Wall, -t / 2, 2.5, h / 2, t, 5.0, h),
      make_box("wall_east", SegClass::Wall, 10.0 + t / 2, 2.5, h / 2, t, 5.0, h),
      // Divider between Floor1 and Floor2 with a doorway at y in [2.0, 3.2].
      make_box("divider_south", SegClass::Wall, 5.0, 1.0, h / 2, t, 2.0, h),
      make_box("divider_north", SegClass::Wall, 5.0, 4.1, h / 2, t, 1.8, h),
  };

  p.furniture = {
      // Search-area tables (lower = long table A, upper = tall table).
      make_box("long_table_a", SegClass::LongTableA, 3.9, 1.5, 0.225, 1.0, 0.8, 0.45),
      make_box("tall_table", SegClass::TallTable, 3.9, 3.5, 0.45, 1.0, 0.8, 0.9),
      make_box("long_table_b", SegClass::LongTableB, 2.0, 4.65, 0.225, 1.2, 0.5, 0.45),
      // Deposit row along the south wall of Floor1.
      make_box("left_bin", SegClass::LeftBin, 1.2, 0.35, 0.1, 0.4, 0.4, 0.2),
      make_box("right_bin", SegClass::RightBin, 1.8, 0.35, 0.1, 0.4, 0.4, 0.2),
      make_box("left_tray", SegClass::LeftTray, 2.4, 0.35, 0.05, 0.4, 0.4, 0.1),
      make_box("right_tray", SegClass::RightTray, 3.0, 0.35, 0.05, 0.4, 0.4, 0.1),
      make_box("left_container", SegClass::LeftContainer, 3.6, 0.35, 0.075, 0.4, 0.4, 0.15),
      make_box("right_container", SegClass::RightContainer, 4.2, 0.35, 0.075, 0.4, 0.4, 0.15),
      // Drawer cabinet against the west wall.
      make_box("drawer_frame", SegClass::DrawerFrame, 0.3, 2.2, 0.4, 0.5, 1.1, 0.8),
      // Task-2 shelf against the east wall.
      make_box("shelf", SegClass::Shelf, 9.65, 2.5, 0.75, 0.5, 1.8, 1.5),
  };

  auto drawer = [](std::string name, SegClass body, SegClass knob, double cy, double cz) {
    Drawer d;
    d.name = std::move(name);
    d.body_class = body;
    d.knob_class = knob;
    d.closed_body = OrientedBox{{0.35, cy, cz}, 0.42, 0.45, 0.2, 0.0};
    d.facing_yaw = 0.0;  // opens toward +x
    d.travel = 0.25;
    return d;
  };
  p.drawers = {
      drawer("bottom", SegClass::BottomDrawer, SegClass::BottomDrawerKnob, 1.95, 0.2),
      drawer("top", SegClass::TopDrawer, SegClass::TopDrawerKnob, 1.95, 0.6),
      drawer("left", SegClass::LeftDrawer, SegClass::LeftDrawerKnob, 2.45, 0.6),
  };

  p.areas = {
      {"floor1", 0.0, 0.0, 5.0, 5.0},
      {"floor2", 5.0, 0.0, 10.0, 5.0},
      {"search_area", 1.2, 0.8, 4.6, 4.2},
      {"deposit_left_bin", 1.0, 0.15, 1.4, 0.55},
      {"deposit_right_bin", 1.6, 0.15, 2.0, 0.55},
      {"deposit_left_tray", 2.2, 0.15, 2.6, 0.55},
      {"deposit_right_tray", 2.8, 0.15, 3.2, 0.55},
      {"deposit_left_container", 3.4, 0.15, 3.8, 0.55},
      {"deposit_right_container", 4.0, 0.15, 4.4, 0.55},
      {"obstacle_area", 5.6, 0.6, 8.4, 4.4},
      {"goal_area", 8.6, 1.9, 9.3, 3.1},
      {"delivery_area", 6.2, 3.4, 8.2, 4.6},
  };
  p.deposit_for_category = {
      {"Food", "deposit_left_tray"},        {"Kitchen", "deposit_right_tray"},
      {"Shape", "deposit_left_container"},  {"Tool", "deposit_right_container"},
      {"Task", "deposit_left_bin"},         {"Unknown", "deposit_right_bin"},
      {"Boss", "deposit_left_bin"},
  };
  p.task1_start = Pose2D(0.9, 1.6, 0.9);
  p.task2_start = Pose2D(5.4, 2.6, 0.0);
  p.shelf_row_heights = {0.4, 0.8, 1.2};
  return p;
}

Scene empty_scene() {
  Scene s;
  s.plan = nominal_floor_plan();
  s.robot.pose = s.plan.task1_start;
  return s;
}

namespace {

json point_to_json(const Point3& p) { return json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }
Point3 point_from_json(const json& j) {
  return Point3{j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
}

json pose_to_json(const Pose2D& p) { return json{{"x", p.x}, {"y", p.y}, {"yaw", p.yaw}}; }
Pose2D pose_from_json(const json& j) {
  return Pose2D(j.at("x").get<double>(), j.at("y").get<double>(), j.at("yaw").get<double>());
}

json box_to_json(const OrientedBox& b) {
  return json{{"center", point_to_json(b.center)},
              {"size", {b.size_x, b.size_y, b.size_z}},
              {"yaw", b.yaw}};
}

OrientedBox box_from_json(const json& j) {
  OrientedBox b;
  b.center = point_from_json(j.at("center"));
  b.size_x = j.at("size")[0].get<double>();
  b.size_y = j.at("size")[1].get<double>();
  b.size_z = j.at("size")[2].get<double>();
  b.yaw = j.value("yaw", 0.0);
  return b;
}

json furniture_to_json(const Furniture& f) {
  return json{{"name", f.name}, {"seg", static_cast<int>(f.seg)}, {"box", box_to_json(f.box)}};
}

Furniture furniture_from_json(const json& j) {
  Furniture f;
  f.name = j.at("name").get<std::string>();
  f.seg = static_cast<SegClass>(j.at("seg").get<int>());
  f.box = box_from_json(j.at("box"));
  return f;
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
  json j;
  json plan;
  plan["bounds"] = {scene.plan.min_x, scene.plan.min_y, scene.plan.max_x, scene.plan.max_y};
  plan["wall_height"] = scene.plan.wall_height;
  plan["wall_thickness"] = scene.plan.wall_thickness;
  plan["walls"] = json::array();
  for (const Furniture& w : scene.plan.walls) plan["walls"].push_back(furniture_to_json(w));
  plan["items"] = json::array();
  for (const Furniture& f : scene.plan.furniture) plan["items"].push_back(furniture_to_json(f));
  plan["drawers"] = json::array();
  for (const Drawer& d : scene.plan.drawers) {
    plan["drawers"].push_back(json{{"name", d.name},
                                   {"body_class", static_cast<int>(d.body_class)},
                                   {"knob_class", static_cast<int>(d.knob_class)},
                                   {"closed_body", box_to_json(d.closed_body)},
                                   {"facing_yaw", d.facing_yaw},
                                   {"open_fraction", d.open_fraction},
                                   {"travel", d.travel},
                                   {"knob_offset_y", d.knob_offset_y},
                                   {"knob_offset_z", d.knob_offset_z},
                                   {"knob_size", d.knob_size},
                                   {"knob_yaw", d.knob_yaw}});
  }
  plan["areas"] = json::array();
  for (const NamedArea& a : scene.plan.areas)
    plan["areas"].push_back(
        json{{"name", a.name}, {"bounds", {a.min_x, a.min_y, a.max_x, a.max_y}}});
  plan["deposits"] = scene.plan.deposit_for_category;
  plan["task1_start"] = pose_to_json(scene.plan.task1_start);
  plan["task2_start"] = pose_to_json(scene.plan.task2_start);
  plan["shelf_rows"] = scene.plan.shelf_row_heights;
  j["furniture"] = plan;

  j["objects"] = json::array();
  for (const SceneObject& o : scene.objects) {
    json jo{{"name", o.name},
            {"category", to_string(o.category)},
            {"unknown", o.unknown_object},
            {"position", point_to_json(o.position)},
            {"yaw", o.yaw},
            {"dims", {o.dim_x, o.dim_y, o.dim_z}},
            {"mass", o.mass == MassClass::Light ? "light" : "normal"},
            {"orientation_sensitive", o.orientation_sensitive},
            {"appearance", o.appearance},
            {"location", static_cast<int>(o.location)}};
    if (!o.stored_area.empty()) jo["stored_area"] = o.stored_area;
    j["objects"].push_back(jo);
  }

  j["people"] = json::array();
  for (const Person& p : scene.people) {
    j["people"].push_back(
        json{{"name", p.name},
             {"pose", pose_to_json(p.pose)},
             {"posture", p.posture == Posture::Standing ? "standing" : "sitting"},
             {"waving", p.waving == WavingSide::None   ? "none"
                        : p.waving == WavingSide::Left ? "left"
                                                       : "right"}});
  }

  j["robot"] = json{{"pose", pose_to_json(scene.robot.pose)},
                    {"radius", scene.robot.radius},
                    {"arm_height", scene.robot.arm_height},
                    {"holding", scene.robot.holding ? json(*scene.robot.holding) : json()}};
  j["clock"] = scene.clock;
  j["seed"] = scene.seed;
  return j.dump(2) + "\n";
}

Scene scene_from_json(const std::string& text) {
  const json j = json::parse(text);
  Scene s;
  const json& plan = j.at("furniture");
  s.plan.min_x = plan.at("bounds")[0].get<double>();
  s.plan.min_y = plan.at("bounds")[1].get<double>();
  s.plan.max_x = plan.at("bounds")[2].get<double>();
  s.plan.max_y = plan.at("bounds")[3].get<double>();
  s.plan.wall_height = plan.at("wall_height").get<double>();
  s.plan.wall_thickness = plan.at("wall_thickness").get<double>();
  for (const json& w : plan.at("walls")) s.plan.walls.push_back(furniture_from_json(w));
  for (const json& f : plan.at("items")) s.plan.furniture.push_back(furniture_from_json(f));
  for (const json& dj : plan.at("drawers")) {
    Drawer d;
    d.name = dj.at("name").get<std::string>();
    d.body_class = static_cast<SegClass>(dj.at("body_class").get<int>());
    d.knob_class = static_cast<SegClass>(dj.at("knob_class").get<int>());
    d.closed_body = box_from_json(dj.at("closed_body"));
    d.facing_yaw = dj.at("facing_yaw").get<double>();
    d.open_fraction = dj.at("open_fraction").get<double>();
    d.travel = dj.at("travel").get<double>();
    d.knob_offset_y = dj.at("knob_offset_y").get<double>();
    d.knob_offset_z = dj.at("knob_offset_z").get<double>();
    d.knob_size = dj.at("knob_size").get<double>();
    d.knob_yaw = dj.at("knob_yaw").get<double>();
    s.plan.drawers.push_back(d);
  }
  for (const json& aj : plan.at("areas")) {
    NamedArea a;
    a.name = aj.at("name").get<std::string>();
    a.min_x = aj.at("bounds")[0].get<double>();
    a.min_y = aj.at("bounds")[1].get<double>();
    a.max_x = aj.at("bounds")[2].get<double>();
    a.max_y = aj.at("bounds")[3].get<double>();
    s.plan.areas.push_back(a);
  }
  s.plan.deposit_for_category = plan.at("deposits").get<std::map<std::string, std::string>>();
  s.plan.task1_start = pose_from_json(plan.at("task1_start"));
  s.plan.task2_start = pose_from_json(plan.at("task2_start"));
  s.plan.shelf_row_heights = plan.at("shelf_rows").get<std::vector<double>>();

  for (const json& jo : j.at("objects")) {
    SceneObject o;
    o.name = jo.at("name").get<std::string>();
    o.category = category_from_string(jo.at("category").get<std::string>());
    o.unknown_object = jo.value("unknown", false);
    o.position = point_from_json(jo.at("position"));
    o.yaw = jo.at("yaw").get<double>();
    o.dim_x = jo.at("dims")[0].get<double>();
    o.dim_y = jo.at("dims")[1].get<double>();
    o.dim_z = jo.at("dims")[2].get<double>();
    o.mass = jo.at("mass").get<std::string>() == "light" ? MassClass::Light : MassClass::Normal;
    o.orientation_sensitive = jo.value("orientation_sensitive", false);
    o.appearance = jo.value("appearance", std::vector<double>{});
    o.location = static_cast<ObjectLocation>(jo.value("location", 0));
    o.stored_area = jo.value("stored_area", "");
    s.objects.push_back(o);
  }
  for (const json& jp : j.at("people")) {
    Person p;
    p.name = jp.at("name").get<std::string>();
    p.pose = pose_from_json(jp.at("pose"));
    p.posture =
        jp.at("posture").get<std::string>() == "standing" ? Posture::Standing : Posture::Sitting;
    const std::string w = jp.at("waving").get<std::string>();
    p.waving =
        w == "none" ? WavingSide::None : (w == "left" ? WavingSide::Left : WavingSide::Right);
    s.people.push_back(p);
  }
  const json& jr = j.at("robot");
  s.robot.pose = pose_from_json(jr.at("pose"));
  s.robot.radius = jr.at("radius").get<double>();
  s.robot.arm_height = jr.at("arm_height").get<double>();
  if (!jr.at("holding").is_null()) s.robot.holding = jr.at("holding").get<std::string>();
  s.clock = j.value("clock", 0.0);
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write scene: " + path);
  out << scene_to_json(scene);
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scene: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scene_from_json(buf.str());
}

}  // namespace tidyup::world
