#include "tidyup/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tidyup::sensors {

using geom::OrientedBox;
using geom::Point3;
using geom::Pose2D;
using world::Scene;
using world::SegClass;

namespace {

struct Basis {
  Point3 right, down, forward;
};

Basis camera_basis(const CameraPose& cam) {
  const double cy = std::cos(cam.yaw), sy = std::sin(cam.yaw);
  const double cp = std::cos(cam.pitch), sp = std::sin(cam.pitch);
  Basis b;
  b.forward = {cy * cp, sy * cp, -sp};
  b.right = {sy, -cy, 0.0};
  b.down = {-sp * cy, -sp * sy, -cp};
  return b;
}

struct Surface {
  OrientedBox box;
  SegClass seg = SegClass::Background;
  std::int32_t instance = -1;
};

std::vector<Surface> collect_surfaces(const Scene& scene) {
  std::vector<Surface> out;
  for (const world::Furniture& w : scene.plan.walls) out.push_back({w.box, w.seg, -1});
  for (const world::Furniture& f : scene.plan.furniture) out.push_back({f.box, f.seg, -1});
  for (const world::Drawer& d : scene.plan.drawers) {
    out.push_back({d.body(), d.body_class, -1});
    out.push_back({d.knob(), d.knob_class, -1});
  }
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const world::SceneObject& o = scene.objects[i];
    if (o.location == world::ObjectLocation::Gripper) continue;
    const std::int32_t inst =
        o.location == world::ObjectLocation::World ? static_cast<std::int32_t>(i) : -1;
    out.push_back({o.box(), SegClass::PickableObject, inst});
  }
  for (const world::Person& p : scene.people)
    out.push_back({p.body_box(), SegClass::Background, -1});
  return out;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Entry parameter of a ray against a z-aligned box; kInf on miss. The ray
/// direction need not be normalized.
double ray_box_enter(const Point3& origin, const Point3& dir, const OrientedBox& box) {
  const double c = std::cos(-box.yaw), s = std::sin(-box.yaw);
  const double ox = c * (origin.x - box.center.x) - s * (origin.y - box.center.y);
  const double oy = s * (origin.x - box.center.x) + c * (origin.y - box.center.y);
  const double oz = origin.z - box.center.z;
  const double dx = c * dir.x - s * dir.y;
  const double dy = s * dir.x + c * dir.y;
  const double dz = dir.z;

  double t0 = 0.0, t1 = kInf;
  const double o[3] = {ox, oy, oz};
  const double d[3] = {dx, dy, dz};
  const double half[3] = {box.size_x / 2, box.size_y / 2, box.size_z / 2};
  for (int a = 0; a < 3; ++a) {
    if (std::abs(d[a]) < 1e-12) {
      if (o[a] < -half[a] || o[a] > half[a]) return kInf;
      continue;
    }
    double ta = (-half[a] - o[a]) / d[a];
    double tb = (half[a] - o[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return kInf;
  }
  return t0 > 0.0 ? t0 : kInf;
}

struct Hit {
  double t = kInf;  // z-depth for camera rays built with forward component 1
  SegClass seg = SegClass::Background;
  std::int32_t instance = -1;
};

Hit cast_ray(const Point3& origin, const Point3& dir, const std::vector<Surface>& surfaces) {
  Hit hit;
  // Floor plane.
  if (dir.z < -1e-12) {
    const double t = -origin.z / dir.z;
    if (t > 0.0 && t < hit.t) hit = {t, SegClass::Background, -1};
  }
  for (const Surface& s : surfaces) {
    const double t = ray_box_enter(origin, dir, s.box);
    if (t < hit.t) hit = {t, s.seg, s.instance};
  }
  return hit;
}

template <typename PixelFn>
void render(const Scene& scene, const CameraPose& cam, const CameraIntrinsics& intr,
            PixelFn&& per_pixel) {
  const Basis b = camera_basis(cam);
  const std::vector<Surface> surfaces = collect_surfaces(scene);
  for (int v = 0; v < intr.height; ++v) {
    const double py = (v - intr.cy) / intr.fy;
    for (int u = 0; u < intr.width; ++u) {
      const double px = (u - intr.cx) / intr.fx;
      // Camera-frame direction (px, py, 1): the ray parameter equals z-depth.
      const Point3 dir{b.right.x * px + b.down.x * py + b.forward.x,
                       b.right.y * px + b.down.y * py + b.forward.y,
                       b.right.z * px + b.down.z * py + b.forward.z};
      per_pixel(u, v, cast_ray(cam.position, dir, surfaces));
    }
  }
}

}  // namespace

DepthImage render_depth(const Scene& scene, const CameraPose& cam, const CameraIntrinsics& intr,
                        std::uint64_t noise_seed, double noise_sigma) {
  DepthImage img;
  img.width = intr.width;
  img.height = intr.height;
  img.depth.assign(static_cast<std::size_t>(intr.width) * intr.height, 0.0f);
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> noise(0.0, noise_sigma);
  render(scene, cam, intr, [&](int u, int v, const Hit& hit) {
    if (hit.t < intr.near_clip || hit.t > intr.far_clip) return;  // missing
    double d = hit.t;
    if (noise_sigma > 0.0) d = std::max(intr.near_clip, d + noise(rng));
    img.at(u, v) = static_cast<float>(d);
  });
  return img;
}

SegImage render_segmentation(const Scene& scene, const CameraPose& cam,
                             const CameraIntrinsics& intr) {
  SegImage img;
  img.width = intr.width;
  img.height = intr.height;
  img.label.assign(static_cast<std::size_t>(intr.width) * intr.height, SegClass::Background);
  render(scene, cam, intr, [&](int u, int v, const Hit& hit) {
    if (hit.t < intr.near_clip || hit.t > intr.far_clip) return;
    img.label[static_cast<std::size_t>(v) * intr.width + u] = hit.seg;
  });
  return img;
}

InstanceImage render_instances(const Scene& scene, const CameraPose& cam,
                               const CameraIntrinsics& intr) {
  InstanceImage img;
  img.width = intr.width;
  img.height = intr.height;
  img.id.assign(static_cast<std::size_t>(intr.width) * intr.height, -1);
  render(scene, cam, intr, [&](int u, int v, const Hit& hit) {
    if (hit.t < intr.near_clip || hit.t > intr.far_clip) return;
    img.id[static_cast<std::size_t>(v) * intr.width + u] = hit.instance;
  });
  return img;
}

LidarScan render_lidar(const Scene& scene, const Pose2D& robot, const LidarParams& params) {
  LidarScan scan;
  scan.height = params.height;
  scan.angles.resize(params.beams);
  scan.ranges.resize(params.beams);
  const std::vector<Surface> surfaces = collect_surfaces(scene);
  const Point3 origin{robot.x, robot.y, params.height};
  for (int i = 0; i < params.beams; ++i) {
    const double bearing = -geom::kPi + 2.0 * geom::kPi * i / params.beams;
    scan.angles[i] = bearing;
    const double ang = robot.yaw + bearing;
    const Point3 dir{std::cos(ang), std::sin(ang), 0.0};
    double best = kInf;
    for (const Surface& s : surfaces) {
      // Surfaces entirely below or above the scan plane give no return.
      const double z0 = s.box.center.z - s.box.size_z / 2;
      const double z1 = s.box.center.z + s.box.size_z / 2;
      if (z1 < params.height || z0 > params.height) continue;
      best = std::min(best, ray_box_enter(origin, dir, s.box));
    }
    scan.ranges[i] = (best > params.max_range) ? 0.0 : best;
  }
  return scan;
}

Point3 backproject(double u, double v, double depth, const CameraPose& cam,
                   const CameraIntrinsics& intr) {
  const Basis b = camera_basis(cam);
  const double px = (u - intr.cx) / intr.fx * depth;
  const double py = (v - intr.cy) / intr.fy * depth;
  return Point3{cam.position.x + b.right.x * px + b.down.x * py + b.forward.x * depth,
                cam.position.y + b.right.y * px + b.down.y * py + b.forward.y * depth,
                cam.position.z + b.right.z * px + b.down.z * py + b.forward.z * depth};
}

geom::PointCloud depth_to_cloud(const DepthImage& img, const CameraPose& cam,
                                const CameraIntrinsics& intr, int stride) {
  geom::PointCloud cloud("map");
  for (int v = 0; v < img.height; v += stride)
    for (int u = 0; u < img.width; u += stride) {
      const float d = img.at(u, v);
      if (d <= 0.0f) continue;
      cloud.push_back(backproject(u, v, d, cam, intr));
    }
  return cloud;
}

geom::PointCloud lidar_to_cloud(const LidarScan& scan, const Pose2D& robot) {
  geom::PointCloud cloud("map");
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    if (r <= 0.0) continue;
    const double ang = robot.yaw + scan.angles[i];
    cloud.push_back({robot.x + r * std::cos(ang), robot.y + r * std::sin(ang), scan.height});
  }
  return cloud;
}

CameraPose head_camera_at(const Pose2D& robot, const Point3& look_at, double camera_height) {
  CameraPose cam;
  cam.position = {robot.x, robot.y, camera_height};
  const double dx = look_at.x - cam.position.x;
  const double dy = look_at.y - cam.position.y;
  const double horiz = std::hypot(dx, dy);
  cam.yaw = std::atan2(dy, dx);
  cam.pitch = std::atan2(cam.position.z - look_at.z, std::max(horiz, 1e-6));
  return cam;
}

namespace {

PersonKeypoint project_point(const Point3& p, const CameraPose& cam, const CameraIntrinsics& intr,
                             const Basis& b) {
  PersonKeypoint kp;
  const Point3 rel = p - cam.position;
  const double z = geom::dot(rel, b.forward);
  if (z <= intr.near_clip) return kp;  // behind or too close
  const double x = geom::dot(rel, b.right);
  const double y = geom::dot(rel, b.down);
  kp.u = intr.cx + intr.fx * x / z;
  kp.v = intr.cy + intr.fy * y / z;
  kp.depth = z;
  kp.visible = kp.u >= 0 && kp.u < intr.width && kp.v >= 0 && kp.v < intr.height &&
               z <= intr.far_clip;
  return kp;
}

}  // namespace

std::vector<PersonObservation> observe_people(const Scene& scene, const CameraPose& cam,
                                              const CameraIntrinsics& intr,
                                              double room_depth_bound) {
  using world::Posture;
  using world::WavingSide;
  const Basis basis = camera_basis(cam);
  std::vector<PersonObservation> out;
  for (std::size_t i = 0; i < scene.people.size(); ++i) {
    const world::Person& person = scene.people[i];
    const bool standing = person.posture == Posture::Standing;
    const double shoulder_z = standing ? 1.45 : 1.05;
    const double elbow_z = standing ? 1.15 : 0.80;
    const double wrist_down_z = standing ? 0.85 : 0.55;
    const double wrist_up_z = elbow_z + 0.45;

    // Lateral axis perpendicular to the camera-to-person direction, so the
    // arms spread across the image.
    const double vx = person.pose.x - cam.position.x;
    const double vy = person.pose.y - cam.position.y;
    const double n = std::max(std::hypot(vx, vy), 1e-9);
    const double lx = -vy / n, ly = vx / n;

    auto at = [&](double lateral, double z) {
      return Point3{person.pose.x + lateral * lx, person.pose.y + lateral * ly, z};
    };

    PersonObservation obs;
    obs.person_index = static_cast<int>(i);
    obs.right_elbow = project_point(at(0.25, elbow_z), cam, intr, basis);
    obs.left_elbow = project_point(at(-0.25, elbow_z), cam, intr, basis);
    const bool right_up = person.waving == WavingSide::Right;
    const bool left_up = person.waving == WavingSide::Left;
    obs.right_wrist =
        project_point(at(right_up ? 0.32 : 0.30, right_up ? wrist_up_z : wrist_down_z), cam,
                      intr, basis);
    obs.left_wrist = project_point(at(left_up ? -0.32 : -0.30, left_up ? wrist_up_z : wrist_down_z),
                                   cam, intr, basis);

    const PersonKeypoint torso = project_point(at(0.0, shoulder_z), cam, intr, basis);
    if (!torso.visible) continue;
    obs.depth = torso.depth;
    obs.inside_room = torso.depth <= room_depth_bound;

    // Bounding box from the body volume corners.
    const double half_w = 0.35;
    double min_u = kInf, min_v = kInf, max_u = -kInf, max_v = -kInf;
    for (double lateral : {-half_w, half_w})
      for (double z : {0.0, person.height()}) {
        const PersonKeypoint c = project_point(at(lateral, z), cam, intr, basis);
        if (c.depth <= 0) continue;
        min_u = std::min(min_u, c.u);
        max_u = std::max(max_u, c.u);
        min_v = std::min(min_v, c.v);
        max_v = std::max(max_v, c.v);
      }
    obs.bbox_min_u = std::clamp(min_u, 0.0, static_cast<double>(intr.width - 1));
    obs.bbox_max_u = std::clamp(max_u, 0.0, static_cast<double>(intr.width - 1));
    obs.bbox_min_v = std::clamp(min_v, 0.0, static_cast<double>(intr.height - 1));
    obs.bbox_max_v = std::clamp(max_v, 0.0, static_cast<double>(intr.height - 1));
    out.push_back(obs);
  }
  return out;
}

}  // namespace tidyup::sensors
