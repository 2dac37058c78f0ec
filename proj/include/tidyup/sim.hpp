#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "tidyup/geom.hpp"
#include "tidyup/world.hpp"

namespace tidyup::sim {

struct MoveCommand {
  geom::Pose2D target;
  double max_step = 0.25;  // meters advanced per call
};

struct PickCommand {
  std::string object_name;
  double x = 0, y = 0, z = 0, yaw = 0;  // grasp pose in the map frame
};

struct PlaceCommand {
  double x = 0, y = 0;
  double yaw = 0;
};

struct OpenDrawerCommand {
  std::string drawer_name;
  geom::Point3 knob_estimate;
};

struct WaitCommand {
  double duration = 0;
};

using Command =
    std::variant<MoveCommand, PickCommand, PlaceCommand, OpenDrawerCommand, WaitCommand>;

enum class SimEventKind { Hit, Drop, Picked, Placed, DrawerOpened };

struct SimEvent {
  SimEventKind kind;
  std::string subject;  // object / drawer name
  std::string detail;   // deposit area, etc.
};

struct StepResult {
  bool success = false;
  std::string message;
  std::vector<SimEvent> events;
};

struct SimParams {
  double move_speed = 0.5;          // m/s for the clock
  double pick_pos_tolerance = 0.02;
  double pick_z_low = 0.05;         // grasp z window around the object top
  double pick_z_high = 0.20;
  double gripper_max_open = 0.15;
  double reach_radius = 0.9;
  double reach_height = 1.3;
  double knob_tolerance = 0.05;
  double pick_duration = 5.0;
  double place_duration = 4.0;
  double drawer_duration = 6.0;
  double hit_height = 0.4;          // base can only hit things below this
};

struct FailureConfig {
  double drop_rate = 0.0;  // chance a carried object drops per move command
};

/// Owns the ground-truth scene. Modules receive immutable snapshots; only
/// step() mutates the world, and the clock is monotone.
class Simulator {
 public:
  Simulator(world::Scene scene, SimParams params = {}, FailureConfig failures = {},
            std::uint64_t seed = 0);

  const world::Scene& scene() const { return scene_; }
  world::Scene snapshot() const { return scene_; }
  const SimParams& params() const { return params_; }

  StepResult step(const Command& cmd);

  /// Scripted injection: the next carry movement drops the held object.
  void force_drop_on_next_move() { force_drop_ = true; }

 private:
  StepResult do_move(const MoveCommand& cmd);
  StepResult do_pick(const PickCommand& cmd);
  StepResult do_place(const PlaceCommand& cmd);
  StepResult do_open(const OpenDrawerCommand& cmd);

  world::Scene scene_;
  SimParams params_;
  FailureConfig failures_;
  std::mt19937_64 drop_rng_;
  bool force_drop_ = false;
};

/// Randomization bounds; zero ranges reproduce the nominal layout.
struct RandomizeProfile {
  double robot_start_jitter = 0.0;
  double wall_height_range = 0.0;
  double wall_thickness_range = 0.0;
  double furniture_shift = 0.0;
  double furniture_rotation = 0.0;
  double knob_offset_range = 0.0;    // along the drawer face
  double knob_height_range = 0.0;
  double knob_rotation_range = 0.0;
  double knob_size_range = 0.0;
  double drawer_open_max = 0.0;
  double misc_drawer_prob = 0.0;
  double tray_size_range = 0.0;
  int min_objects = 0;
  int max_objects = 0;
  double object_size_jitter = 0.0;
  double appearance_noise = 0.1;
  int appearance_dim = 64;
  bool include_boss = false;
  bool place_people = false;
  int shelf_items = 0;

  static RandomizeProfile nominal() { return RandomizeProfile{}; }
  /// Bounds resembling the competition setup: ~20 objects, people in the
  /// delivery area, stocked shelf, perturbed furniture and knobs.
  static RandomizeProfile competition();
};

world::Scene randomize_scene(std::uint64_t seed, const RandomizeProfile& profile);

/// Floor-2 course with three low objects (below the lidar plane) between
/// the task-2 start and the goal area, with guaranteed passable corridors.
world::Scene obstacle_course_scene(std::uint64_t seed);

/// Strips a uniqueness suffix ("spoon#2" -> "spoon").
std::string base_name(const std::string& instance_name);

}  // namespace tidyup::sim
