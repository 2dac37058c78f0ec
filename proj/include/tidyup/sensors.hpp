#pragma once

#include <cstdint>
#include <vector>

#include "tidyup/geom.hpp"
#include "tidyup/world.hpp"

namespace tidyup::sensors {

struct CameraIntrinsics {
  int width = 640;
  int height = 480;
  double fx = 525.0;
  double fy = 525.0;
  double cx = 319.5;
  double cy = 239.5;
  double near_clip = 0.3;
  double far_clip = 8.0;
};

/// Camera pose in the map frame: yaw about z, then pitch tilting the view
/// down. Camera frame is x right, y down, z forward.
struct CameraPose {
  geom::Point3 position;
  double yaw = 0.0;
  double pitch = 0.0;
};

struct DepthImage {
  int width = 0, height = 0;
  std::vector<float> depth;  // z-depth in meters, 0 = missing

  float at(int u, int v) const { return depth[static_cast<std::size_t>(v) * width + u]; }
  float& at(int u, int v) { return depth[static_cast<std::size_t>(v) * width + u]; }
};

struct SegImage {
  int width = 0, height = 0;
  std::vector<world::SegClass> label;

  world::SegClass at(int u, int v) const { return label[static_cast<std::size_t>(v) * width + u]; }
};

/// Per-pixel scene-object index, -1 where no object is visible.
struct InstanceImage {
  int width = 0, height = 0;
  std::vector<std::int32_t> id;

  std::int32_t at(int u, int v) const { return id[static_cast<std::size_t>(v) * width + u]; }
};

struct LidarParams {
  int beams = 360;
  double height = 0.2;      // sensor plane above the floor
  double max_range = 10.0;
};

struct LidarScan {
  std::vector<double> angles;  // robot-relative bearing
  std::vector<double> ranges;  // meters, 0 = no return
  double height = 0.2;
};

/// Ray-cast z-depth image of the scene, deterministic for a fixed seed.
/// Gaussian noise of `noise_sigma` meters is added to valid pixels; hits
/// closer than the near clip or beyond the far clip are missing (0).
DepthImage render_depth(const world::Scene& scene, const CameraPose& cam,
                        const CameraIntrinsics& intr, std::uint64_t noise_seed,
                        double noise_sigma = 0.0);

/// Pixel-aligned with render_depth; people and the floor map to Background.
SegImage render_segmentation(const world::Scene& scene, const CameraPose& cam,
                             const CameraIntrinsics& intr);

InstanceImage render_instances(const world::Scene& scene, const CameraPose& cam,
                               const CameraIntrinsics& intr);

/// 2-D scan at the sensor height; surfaces entirely below the plane give no
/// return, which is what the recognized-object costmap layer compensates for.
LidarScan render_lidar(const world::Scene& scene, const geom::Pose2D& robot,
                       const LidarParams& params);

/// Back-projects pixel (u, v) at z-depth d to the map frame.
geom::Point3 backproject(double u, double v, double depth, const CameraPose& cam,
                         const CameraIntrinsics& intr);

/// Full-image back-projection (map frame), skipping missing pixels.
geom::PointCloud depth_to_cloud(const DepthImage& img, const CameraPose& cam,
                                const CameraIntrinsics& intr, int stride = 1);

/// Scan endpoints as a map-frame cloud at the sensor height.
geom::PointCloud lidar_to_cloud(const LidarScan& scan, const geom::Pose2D& robot);

/// Head-camera pose for the robot at a given pose, aimed at a target point.
CameraPose head_camera_at(const geom::Pose2D& robot, const geom::Point3& look_at,
                          double camera_height = 1.1);

/// Keypoint observation of one person, projected through the camera.
struct PersonKeypoint {
  double u = 0, v = 0;  // pixels
  double depth = 0;     // meters
  bool visible = false;
};

struct PersonObservation {
  int person_index = -1;
  PersonKeypoint left_wrist, right_wrist, left_elbow, right_elbow;
  double bbox_min_u = 0, bbox_min_v = 0, bbox_max_u = 0, bbox_max_v = 0;
  double depth = 0;          // representative distance (torso)
  bool inside_room = false;  // depth-tested against the room bound
};

/// Projects every person in the scene; persons behind the camera are
/// dropped. `room_depth_bound` is the depth beyond which a person counts as
/// outside the room.
std::vector<PersonObservation> observe_people(const world::Scene& scene, const CameraPose& cam,
                                              const CameraIntrinsics& intr,
                                              double room_depth_bound);

}  // namespace tidyup::sensors
