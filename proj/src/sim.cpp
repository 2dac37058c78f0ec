#include "tidyup/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "tidyup/prompts.hpp"
#include "tidyup/rng.hpp"

namespace tidyup::sim {

using geom::OrientedBox;
using geom::Point3;
using geom::Pose2D;
using world::ObjectLocation;
using world::Scene;
using world::SceneObject;

std::string base_name(const std::string& instance_name) {
  const auto pos = instance_name.find('#');
  return pos == std::string::npos ? instance_name : instance_name.substr(0, pos);
}

namespace {

/// Distance from a point to an oriented box footprint (0 inside).
double footprint_distance(double x, double y, const OrientedBox& box) {
  const double c = std::cos(-box.yaw), s = std::sin(-box.yaw);
  const double lx = c * (x - box.center.x) - s * (y - box.center.y);
  const double ly = s * (x - box.center.x) + c * (y - box.center.y);
  const double dx = std::max(std::abs(lx) - box.size_x / 2, 0.0);
  const double dy = std::max(std::abs(ly) - box.size_y / 2, 0.0);
  return std::hypot(dx, dy);
}

bool box_below(const OrientedBox& box, double height) {
  return box.center.z - box.size_z / 2 < height;
}

}  // namespace

Simulator::Simulator(Scene scene, SimParams params, FailureConfig failures, std::uint64_t seed)
    : scene_(std::move(scene)),
      params_(params),
      failures_(failures),
      drop_rng_(rng::stream(seed, "sim.drop")) {}

StepResult Simulator::step(const Command& cmd) {
  return std::visit(
      [this](const auto& c) -> StepResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, MoveCommand>) return do_move(c);
        else if constexpr (std::is_same_v<T, PickCommand>) return do_pick(c);
        else if constexpr (std::is_same_v<T, PlaceCommand>) return do_place(c);
        else if constexpr (std::is_same_v<T, OpenDrawerCommand>) return do_open(c);
        else {
          scene_.clock += c.duration;
          return StepResult{true, "", {}};
        }
      },
      cmd);
}

StepResult Simulator::do_move(const MoveCommand& cmd) {
  StepResult result;
  result.success = true;
  world::RobotState& robot = scene_.robot;
  const double dx = cmd.target.x - robot.pose.x;
  const double dy = cmd.target.y - robot.pose.y;
  const double dist = std::hypot(dx, dy);
  const double advance = std::min(dist, cmd.max_step);

  std::set<std::string> hits;
  const int substeps = std::max(1, static_cast<int>(std::ceil(advance / 0.02)));
  double moved = 0.0;
  double px = robot.pose.x, py = robot.pose.y;
  for (int i = 1; i <= substeps; ++i) {
    const double t = advance * i / substeps;
    const double nx = robot.pose.x + (dist > 1e-9 ? dx / dist * t : 0.0);
    const double ny = robot.pose.y + (dist > 1e-9 ? dy / dist * t : 0.0);

    bool blocked = false;
    for (const world::Furniture& f : scene_.plan.walls)
      if (footprint_distance(nx, ny, f.box) < robot.radius) blocked = true;
    for (const world::Furniture& f : scene_.plan.furniture)
      if (footprint_distance(nx, ny, f.box) < robot.radius) blocked = true;
    for (const world::Person& p : scene_.people)
      if (footprint_distance(nx, ny, p.body_box()) < robot.radius) blocked = true;
    if (blocked) {
      result.success = false;
      result.message = "movement blocked";
      break;
    }

    // Low objects are driven over: a Hit is recorded, the object stays.
    for (const SceneObject& o : scene_.objects) {
      if (o.location != ObjectLocation::World) continue;
      if (!box_below(o.box(), params_.hit_height)) continue;
      if (footprint_distance(nx, ny, o.box()) < robot.radius && !hits.count(o.name)) {
        hits.insert(o.name);
        result.events.push_back({SimEventKind::Hit, o.name, ""});
      }
    }
    px = nx;
    py = ny;
    moved = t;
  }
  robot.pose.x = px;
  robot.pose.y = py;
  if (dist > 1e-9) robot.pose.yaw = geom::normalize_angle(std::atan2(dy, dx));
  if (moved >= dist - 1e-9) robot.pose = cmd.target;

  if (robot.holding) {
    bool drop = force_drop_;
    if (!drop && failures_.drop_rate > 0.0) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      drop = u(drop_rng_) < failures_.drop_rate;
    }
    if (drop) {
      force_drop_ = false;
      SceneObject* held = scene_.find_object(*robot.holding);
      if (held) {
        held->location = ObjectLocation::World;
        held->position = {robot.pose.x + 0.3 * std::cos(robot.pose.yaw),
                          robot.pose.y + 0.3 * std::sin(robot.pose.yaw), 0.0};
        result.events.push_back({SimEventKind::Drop, held->name, ""});
      }
      robot.holding.reset();
    }
  }

  scene_.clock += advance / params_.move_speed + 1e-3;
  return result;
}

StepResult Simulator::do_pick(const PickCommand& cmd) {
  StepResult result;
  scene_.clock += params_.pick_duration;
  if (scene_.robot.holding) {
    result.message = "gripper already holding " + *scene_.robot.holding;
    return result;
  }
  SceneObject* obj = scene_.find_object(cmd.object_name);
  if (!obj || obj->location != ObjectLocation::World) {
    result.message = "object not available: " + cmd.object_name;
    return result;
  }
  const double reach = geom::dist_xy({scene_.robot.pose.x, scene_.robot.pose.y, 0},
                                     {obj->position.x, obj->position.y, 0});
  if (reach > params_.reach_radius || obj->top_z() > params_.reach_height) {
    result.message = "object out of reach";
    return result;
  }
  const double center_err = std::hypot(cmd.x - obj->position.x, cmd.y - obj->position.y);
  if (center_err > params_.pick_pos_tolerance) {
    result.message = "grasp off center";
    return result;
  }
  if (cmd.z < obj->top_z() - params_.pick_z_low || cmd.z > obj->top_z() + params_.pick_z_high) {
    result.message = "grasp height outside window";
    return result;
  }
  // Width of the footprint across the finger axis must fit the gripper;
  // small objects always fit, elongated ones require the right yaw.
  const double rel = cmd.yaw - obj->yaw;
  const double span =
      obj->dim_x * std::abs(std::cos(rel)) + obj->dim_y * std::abs(std::sin(rel));
  const double limit =
      std::max(params_.gripper_max_open, std::min(obj->dim_x, obj->dim_y) + 0.02);
  if (span > limit) {
    result.message = "fingers cannot close around the object at this yaw";
    return result;
  }
  obj->location = ObjectLocation::Gripper;
  scene_.robot.holding = obj->name;
  result.success = true;
  result.events.push_back({SimEventKind::Picked, obj->name, ""});
  return result;
}

StepResult Simulator::do_place(const PlaceCommand& cmd) {
  StepResult result;
  scene_.clock += params_.place_duration;
  if (!scene_.robot.holding) {
    result.message = "nothing in gripper";
    return result;
  }
  const double reach =
      std::hypot(cmd.x - scene_.robot.pose.x, cmd.y - scene_.robot.pose.y);
  if (reach > params_.reach_radius) {
    result.message = "place target out of reach";
    return result;
  }
  SceneObject* obj = scene_.find_object(*scene_.robot.holding);
  if (!obj) throw std::logic_error("held object vanished");
  obj->position = {cmd.x, cmd.y, scene_.support_height(cmd.x, cmd.y)};
  obj->yaw = geom::normalize_angle(cmd.yaw);
  std::string area_name;
  for (const world::NamedArea& a : scene_.plan.areas) {
    if (a.name.rfind("deposit_", 0) == 0 && a.contains(cmd.x, cmd.y)) {
      area_name = a.name;
      break;
    }
  }
  if (!area_name.empty()) {
    obj->location = ObjectLocation::Stored;
    obj->stored_area = area_name;
  } else {
    obj->location = ObjectLocation::World;
  }
  scene_.robot.holding.reset();
  result.success = true;
  result.events.push_back({SimEventKind::Placed, obj->name, area_name});
  return result;
}

StepResult Simulator::do_open(const OpenDrawerCommand& cmd) {
  StepResult result;
  scene_.clock += params_.drawer_duration;
  world::Drawer* drawer = nullptr;
  for (world::Drawer& d : scene_.plan.drawers)
    if (d.name == cmd.drawer_name) drawer = &d;
  if (!drawer) {
    result.message = "no such drawer: " + cmd.drawer_name;
    return result;
  }
  const Point3 knob = drawer->knob_center();
  const double reach =
      std::hypot(knob.x - scene_.robot.pose.x, knob.y - scene_.robot.pose.y);
  if (reach > params_.reach_radius + drawer->travel) {
    result.message = "knob out of reach";
    return result;
  }
  if (geom::dist(cmd.knob_estimate, knob) > params_.knob_tolerance) {
    result.message = "knob estimate too far from the true knob";
    return result;
  }
  drawer->open_fraction = 1.0;
  result.success = true;
  result.events.push_back({SimEventKind::DrawerOpened, drawer->name, ""});
  return result;
}

RandomizeProfile RandomizeProfile::competition() {
  RandomizeProfile p;
  p.robot_start_jitter = 0.05;
  p.wall_height_range = 0.3;
  p.wall_thickness_range = 0.03;
  p.furniture_shift = 0.08;
  p.furniture_rotation = 0.06;
  p.knob_offset_range = 0.12;
  p.knob_height_range = 0.05;
  p.knob_rotation_range = 0.5;
  p.knob_size_range = 0.015;
  p.drawer_open_max = 0.3;
  p.misc_drawer_prob = 0.5;
  p.tray_size_range = 0.05;
  p.min_objects = 18;
  p.max_objects = 22;
  p.object_size_jitter = 0.1;
  p.appearance_noise = 0.12;
  p.include_boss = true;
  p.place_people = true;
  p.shelf_items = 8;
  return p;
}

namespace {

double jitter(std::mt19937_64& gen, double range) {
  if (range <= 0.0) return 0.0;
  std::uniform_real_distribution<double> u(-range, range);
  return u(gen);
}

std::vector<double> sample_appearance(std::mt19937_64& gen, const std::string& name, int dim,
                                      double noise) {
  std::vector<double> v = prompts::prompt_embedding(name, dim);
  if (noise > 0.0) {
    std::normal_distribution<double> g(0.0, noise / std::sqrt(static_cast<double>(dim)));
    for (double& x : v) x += g(gen);
  }
  rng::normalize(v);
  return v;
}

}  // namespace

Scene randomize_scene(std::uint64_t seed, const RandomizeProfile& profile) {
  Scene s = world::empty_scene();
  s.seed = seed;

  auto walls_gen = rng::stream(seed, "walls");
  s.plan.wall_height = std::max(1.0, s.plan.wall_height + jitter(walls_gen, profile.wall_height_range));
  s.plan.wall_thickness =
      std::max(0.03, s.plan.wall_thickness + jitter(walls_gen, profile.wall_thickness_range));
  for (world::Furniture& w : s.plan.walls) {
    w.box.size_z = s.plan.wall_height;
    w.box.center.z = s.plan.wall_height / 2;
  }

  auto furn_gen = rng::stream(seed, "furniture");
  double cabinet_dx = 0.0, cabinet_dy = 0.0;
  for (world::Furniture& f : s.plan.furniture) {
    const double dx = jitter(furn_gen, profile.furniture_shift);
    const double dy = jitter(furn_gen, profile.furniture_shift);
    const double dyaw = jitter(furn_gen, profile.furniture_rotation);
    f.box.center.x += dx;
    f.box.center.y += dy;
    // Walls-adjacent pieces (cabinet, shelf) keep their orientation so they
    // stay flush; free-standing tables may rotate.
    if (f.seg == world::SegClass::LongTableA || f.seg == world::SegClass::TallTable ||
        f.seg == world::SegClass::LongTableB)
      f.box.yaw = geom::normalize_angle(f.box.yaw + dyaw);
    if (f.seg == world::SegClass::DrawerFrame) {
      cabinet_dx = dx;
      cabinet_dy = dy;
    }
    if (profile.tray_size_range > 0.0 &&
        (f.seg == world::SegClass::LeftTray || f.seg == world::SegClass::RightTray ||
         f.seg == world::SegClass::LeftContainer || f.seg == world::SegClass::RightContainer)) {
      f.box.size_x = std::max(0.2, f.box.size_x + jitter(furn_gen, profile.tray_size_range));
      f.box.size_y = std::max(0.2, f.box.size_y + jitter(furn_gen, profile.tray_size_range));
    }
  }
  // Deposit areas follow their furniture.
  for (const world::Furniture& f : s.plan.furniture) {
    std::string area_name;
    switch (f.seg) {
      case world::SegClass::LeftBin: area_name = "deposit_left_bin"; break;
      case world::SegClass::RightBin: area_name = "deposit_right_bin"; break;
      case world::SegClass::LeftTray: area_name = "deposit_left_tray"; break;
      case world::SegClass::RightTray: area_name = "deposit_right_tray"; break;
      case world::SegClass::LeftContainer: area_name = "deposit_left_container"; break;
      case world::SegClass::RightContainer: area_name = "deposit_right_container"; break;
      default: continue;
    }
    for (world::NamedArea& a : s.plan.areas) {
      if (a.name != area_name) continue;
      a.min_x = f.box.center.x - f.box.size_x / 2 - 0.02;
      a.max_x = f.box.center.x + f.box.size_x / 2 + 0.02;
      a.min_y = f.box.center.y - f.box.size_y / 2 - 0.02;
      a.max_y = f.box.center.y + f.box.size_y / 2 + 0.02;
    }
  }

  auto knob_gen = rng::stream(seed, "knobs");
  for (world::Drawer& d : s.plan.drawers) {
    d.closed_body.center.x += cabinet_dx;
    d.closed_body.center.y += cabinet_dy;
    d.knob_offset_y = jitter(knob_gen, profile.knob_offset_range);
    d.knob_offset_z = jitter(knob_gen, profile.knob_height_range);
    d.knob_yaw = jitter(knob_gen, profile.knob_rotation_range);
    d.knob_size = std::max(0.02, 0.04 + jitter(knob_gen, profile.knob_size_range));
    if (profile.drawer_open_max > 0.0) {
      std::uniform_real_distribution<double> u(0.0, profile.drawer_open_max);
      d.open_fraction = u(knob_gen);
    }
  }
  if (profile.misc_drawer_prob > 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(knob_gen) < profile.misc_drawer_prob) {
      world::Furniture misc;
      misc.name = "misc_drawer";
      misc.seg = world::SegClass::MiscDrawer;
      misc.box = geom::OrientedBox{{0.3 + cabinet_dx, 3.0 + cabinet_dy, 0.3}, 0.5, 0.4, 0.6, 0.0};
      s.plan.furniture.push_back(misc);
    }
  }

  auto robot_gen = rng::stream(seed, "robot");
  s.robot.pose.x += jitter(robot_gen, profile.robot_start_jitter);
  s.robot.pose.y += jitter(robot_gen, profile.robot_start_jitter);
  s.robot.pose.yaw =
      geom::normalize_angle(s.robot.pose.yaw + jitter(robot_gen, profile.robot_start_jitter));

  // Pickable objects in the search area: mostly the floor, some on tables.
  auto obj_gen = rng::stream(seed, "objects");
  int count = profile.min_objects;
  if (profile.max_objects > profile.min_objects) {
    std::uniform_int_distribution<int> u(profile.min_objects, profile.max_objects);
    count = u(obj_gen);
  }
  const auto& db = world::object_database();
  const world::NamedArea& search = s.plan.area("search_area");
  std::map<std::string, int> name_uses;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int placed = 0, attempts = 0;
  while (placed < count && attempts < count * 200) {
    ++attempts;
    std::uniform_int_distribution<std::size_t> pick_spec(0, db.size() - 1);
    const world::ObjectSpec& spec = db[pick_spec(obj_gen)];
    if (spec.category == world::Category::Boss) continue;

    SceneObject o;
    const int uses = name_uses[spec.name];
    o.name = uses == 0 ? spec.name : spec.name + "#" + std::to_string(uses + 1);
    o.category = spec.category;
    o.mass = spec.mass;
    o.orientation_sensitive = spec.orientation_sensitive;
    const double sj = profile.object_size_jitter;
    o.dim_x = spec.dim_x * (1.0 + jitter(obj_gen, sj));
    o.dim_y = spec.dim_y * (1.0 + jitter(obj_gen, sj));
    o.dim_z = spec.dim_z * (1.0 + jitter(obj_gen, sj));
    o.yaw = geom::normalize_angle(unit(obj_gen) * 2 * geom::kPi);

    // Surface: floor or one of the two tables in the search area.
    const double which = unit(obj_gen);
    double x, y, z;
    if (which < 0.7) {
      x = search.min_x + unit(obj_gen) * (search.max_x - search.min_x);
      y = search.min_y + unit(obj_gen) * (search.max_y - search.min_y);
      z = 0.0;
      if (s.support_height(x, y) > 0.0) continue;  // under a table footprint
    } else {
      const char* table = which < 0.85 ? "long_table_a" : "tall_table";
      const world::Furniture* f = nullptr;
      for (const world::Furniture& fur : s.plan.furniture)
        if (fur.name == table) f = &fur;
      if (!f) continue;
      x = f->box.center.x + jitter(obj_gen, f->box.size_x / 2 - 0.1);
      y = f->box.center.y + jitter(obj_gen, f->box.size_y / 2 - 0.1);
      z = f->box.center.z + f->box.size_z / 2;
    }
    o.position = {x, y, z};

    bool collides = false;
    const geom::OrientedBox ob = o.box();
    for (const world::Furniture& f : s.plan.furniture)
      if (world::boxes_interpenetrate(ob, f.box)) collides = true;
    for (const world::Furniture& w : s.plan.walls)
      if (world::boxes_interpenetrate(ob, w.box)) collides = true;
    for (const SceneObject& other : s.objects) {
      geom::OrientedBox grown = other.box();
      grown.size_x += 0.04;
      grown.size_y += 0.04;
      if (world::boxes_interpenetrate(ob, grown)) collides = true;
    }
    if (collides) continue;

    o.appearance = sample_appearance(obj_gen, spec.name, profile.appearance_dim,
                                     profile.appearance_noise);
    name_uses[spec.name]++;
    s.objects.push_back(std::move(o));
    ++placed;
  }

  if (profile.include_boss) {
    const world::ObjectSpec* spec = world::find_object_spec("boss");
    SceneObject boss;
    boss.name = "boss";
    boss.category = world::Category::Boss;
    boss.dim_x = spec->dim_x;
    boss.dim_y = spec->dim_y;
    boss.dim_z = spec->dim_z;
    boss.mass = spec->mass;
    // The boss item sat at the same spot in every trial.
    boss.position = {1.5, 3.9, 0.0};
    boss.appearance =
        sample_appearance(obj_gen, "boss", profile.appearance_dim, profile.appearance_noise);
    s.objects.push_back(std::move(boss));
  }

  if (profile.shelf_items > 0) {
    const world::Furniture* shelf = nullptr;
    for (const world::Furniture& f : s.plan.furniture)
      if (f.seg == world::SegClass::Shelf) shelf = &f;
    std::vector<const world::ObjectSpec*> foods;
    for (const world::ObjectSpec& spec : db)
      if (spec.food_shelf_item) foods.push_back(&spec);
    std::shuffle(foods.begin(), foods.end(), obj_gen);
    const int n = std::min<int>(profile.shelf_items, static_cast<int>(foods.size()));
    for (int i = 0; i < n; ++i) {
      const world::ObjectSpec& spec = *foods[i];
      SceneObject o;
      o.name = spec.name;
      o.category = spec.category;
      o.mass = spec.mass;
      o.dim_x = spec.dim_x;
      o.dim_y = spec.dim_y;
      o.dim_z = spec.dim_z;
      const int row = i % static_cast<int>(s.plan.shelf_row_heights.size());
      const int slot = i / static_cast<int>(s.plan.shelf_row_heights.size());
      const double face_x = shelf->box.center.x - shelf->box.size_x / 2 + 0.12;
      o.position = {face_x, shelf->box.center.y - 0.6 + 0.35 * slot,
                    s.plan.shelf_row_heights[row]};
      o.appearance =
          sample_appearance(obj_gen, spec.name, profile.appearance_dim, profile.appearance_noise);
      s.objects.push_back(std::move(o));
    }
  }

  if (profile.place_people) {
    auto people_gen = rng::stream(seed, "people");
    const world::NamedArea& area = s.plan.area("delivery_area");
    std::uniform_real_distribution<double> ux(area.min_x + 0.3, area.max_x - 0.3);
    std::uniform_real_distribution<double> uy(area.min_y + 0.3, area.max_y - 0.3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const bool first_waves = u01(people_gen) < 0.5;
    for (int i = 0; i < 2; ++i) {
      world::Person p;
      p.name = i == 0 ? "judge_a" : "judge_b";
      for (int tries = 0; tries < 50; ++tries) {
        p.pose = geom::Pose2D(ux(people_gen), uy(people_gen), -geom::kPi / 2);
        bool ok = true;
        for (const world::Person& other : s.people)
          if (geom::dist(p.pose, other.pose) < 0.8) ok = false;
        if (ok) break;
      }
      p.posture = u01(people_gen) < 0.5 ? world::Posture::Standing : world::Posture::Sitting;
      const bool waves = (i == 0) == first_waves;
      p.waving = !waves ? world::WavingSide::None
                        : (u01(people_gen) < 0.5 ? world::WavingSide::Left
                                                 : world::WavingSide::Right);
      s.people.push_back(p);
    }
  }

  s.validate();
  return s;
}

Scene obstacle_course_scene(std::uint64_t seed) {
  Scene s = world::empty_scene();
  s.seed = seed;
  s.robot.pose = s.plan.task2_start;

  // Three low objects the 2-D lidar cannot see, between start and goal.
  const char* names[3] = {"pitcher lid", "ball", "t-shirt"};
  auto gen = rng::stream(seed, "obstacle-course");
  std::uniform_real_distribution<double> ux(6.2, 8.0);
  std::uniform_real_distribution<double> uy(1.4, 3.6);
  for (int i = 0; i < 3; ++i) {
    const world::ObjectSpec* spec = world::find_object_spec(names[i]);
    SceneObject o;
    o.name = spec->name;
    o.category = spec->category;
    o.dim_x = spec->dim_x;
    o.dim_y = spec->dim_y;
    o.dim_z = std::min(spec->dim_z, 0.06);  // all below the lidar plane
    o.mass = spec->mass;
    for (int tries = 0; tries < 200; ++tries) {
      o.position = {ux(gen), uy(gen), 0.0};
      bool ok = true;
      // Wide corridors: keep 1.1 m between obstacles and 0.9 m from walls.
      for (const SceneObject& other : s.objects)
        if (geom::dist_xy(o.position, other.position) < 1.1) ok = false;
      if (o.position.y < 1.4 || o.position.y > 3.6) ok = false;
      if (ok) break;
    }
    o.appearance = sample_appearance(gen, o.name, 64, 0.05);
    s.objects.push_back(o);
  }
  s.validate();
  return s;
}

}  // namespace tidyup::sim
