#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tidyup::geom {

constexpr double kPi = 3.14159265358979323846;

/// Normalizes an angle to (-pi, pi].
double normalize_angle(double a);

/// Normalizes an undirected axis angle to (-pi/2, pi/2].
double normalize_half_angle(double a);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator*(const Point3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Point3& a, const Point3& b) { return norm(a - b); }
inline double dist_xy(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;  // radians in (-pi, pi]

  Pose2D() = default;
  Pose2D(double x_, double y_, double yaw_) : x(x_), y(y_), yaw(normalize_angle(yaw_)) {}
};

inline double dist(const Pose2D& a, const Pose2D& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// A z-aligned box: axis-aligned after undoing `yaw` about the center.
struct OrientedBox {
  Point3 center;                      // geometric center
  double size_x = 0.0, size_y = 0.0, size_z = 0.0;
  double yaw = 0.0;

  bool contains(const Point3& p) const;  // inclusive boundaries
};

/// Point cloud with an explicit frame tag and optional per-point class labels.
///
/// Operations that combine clouds (or interpret coordinates in a specific
/// frame) check the tag and throw on mismatch instead of silently
/// reinterpreting coordinates.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::string frame) : frame_(std::move(frame)) {}
  PointCloud(std::string frame, std::vector<Point3> points)
      : frame_(std::move(frame)), points_(std::move(points)) {}

  const std::string& frame() const { return frame_; }
  void set_frame(std::string frame) { frame_ = std::move(frame); }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const std::vector<Point3>& points() const { return points_; }
  const Point3& operator[](std::size_t i) const { return points_[i]; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }

  void push_back(const Point3& p) { points_.push_back(p); }
  void push_back(const Point3& p, int label);
  void reserve(std::size_t n) { points_.reserve(n); }
  void clear() { points_.clear(); labels_.clear(); }

  /// Throws std::invalid_argument unless this cloud is tagged `expected`.
  void require_frame(const std::string& expected) const;

 private:
  std::string frame_;
  std::vector<Point3> points_;
  std::vector<int> labels_;  // empty, or one label per point
};

/// Top-down max-height raster of a point cloud. Cells without points hold
/// the missing marker (NaN); `min_z` is kept alongside for diagnostics.
class Heightmap {
 public:
  static constexpr float kMissing = std::numeric_limits<float>::quiet_NaN();

  Heightmap() = default;
  Heightmap(double origin_x, double origin_y, double cell, int width, int height);

  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  double cell() const { return cell_; }
  int width() const { return width_; }
  int height() const { return height_; }

  bool valid(int ix, int iy) const { return !std::isnan(max_at(ix, iy)); }
  float max_at(int ix, int iy) const { return max_z_[index(ix, iy)]; }
  float min_at(int ix, int iy) const { return min_z_[index(ix, iy)]; }

  void record(int ix, int iy, float z);

  /// Metric coordinates of a cell center.
  double cell_x(int ix) const { return origin_x_ + (ix + 0.5) * cell_; }
  double cell_y(int iy) const { return origin_y_ + (iy + 0.5) * cell_; }

  std::size_t index(int ix, int iy) const;

 private:
  double origin_x_ = 0.0, origin_y_ = 0.0, cell_ = 0.05;
  int width_ = 0, height_ = 0;
  std::vector<float> max_z_;
  std::vector<float> min_z_;
};

/// Keeps at most one point per occupied voxel: the centroid of the voxel's
/// points. Output order follows first occupancy of each voxel.
PointCloud voxel_downsample(const PointCloud& cloud, double leaf);

/// Statistical outlier removal: drops points whose mean distance to their k
/// nearest neighbors exceeds mean + ratio * stddev of that statistic over
/// the cloud (population stddev). Clouds of size <= k are returned unchanged.
PointCloud remove_outliers(const PointCloud& cloud, int k, double ratio);

/// Per XY cell of size `cell`: when the max point height in the cell stays
/// below `height_threshold` the whole cell is judged ground and dropped.
/// Expects the cloud in a z-up robot/base frame.
PointCloud remove_ground(const PointCloud& cloud, double cell, double height_threshold);

/// Removes every point inside any of the robot's body volumes (inclusive).
PointCloud self_filter(const PointCloud& cloud, std::span<const OrientedBox> robot_volumes);

/// Projects a cloud onto the XY plane; each cell keeps the max z of its
/// points, missing marker elsewhere.
Heightmap project_heightmap(const PointCloud& cloud, double origin_x, double origin_y,
                            double extent_x, double extent_y, double cell);

}  // namespace tidyup::geom
