#include "tidyup/geom.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace tidyup::geom {

double normalize_angle(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("normalize_angle: non-finite angle");
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double normalize_half_angle(double a) {
  a = normalize_angle(a);
  if (a <= -kPi / 2.0) a += kPi;
  if (a > kPi / 2.0) a -= kPi;
  return a;
}

bool OrientedBox::contains(const Point3& p) const {
  const double c = std::cos(-yaw), s = std::sin(-yaw);
  const double dx = p.x - center.x, dy = p.y - center.y;
  const double lx = c * dx - s * dy;
  const double ly = s * dx + c * dy;
  const double lz = p.z - center.z;
  return std::abs(lx) <= size_x / 2.0 && std::abs(ly) <= size_y / 2.0 &&
         std::abs(lz) <= size_z / 2.0;
}

void PointCloud::push_back(const Point3& p, int label) {
  if (labels_.size() != points_.size())
    throw std::logic_error("PointCloud: cannot mix labeled and unlabeled points");
  points_.push_back(p);
  labels_.push_back(label);
}

void PointCloud::require_frame(const std::string& expected) const {
  if (frame_ != expected)
    throw std::invalid_argument("PointCloud frame mismatch: have '" + frame_ + "', need '" +
                                expected + "'");
}

Heightmap::Heightmap(double origin_x, double origin_y, double cell, int width, int height)
    : origin_x_(origin_x), origin_y_(origin_y), cell_(cell), width_(width), height_(height) {
  if (cell <= 0.0) throw std::invalid_argument("Heightmap: cell size must be positive");
  if (width <= 0 || height <= 0) throw std::invalid_argument("Heightmap: non-positive extent");
  max_z_.assign(static_cast<std::size_t>(width) * height, kMissing);
  min_z_.assign(static_cast<std::size_t>(width) * height, kMissing);
}

std::size_t Heightmap::index(int ix, int iy) const {
  if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_)
    throw std::out_of_range("Heightmap: cell out of range");
  return static_cast<std::size_t>(iy) * width_ + ix;
}

void Heightmap::record(int ix, int iy, float z) {
  const std::size_t i = index(ix, iy);
  if (std::isnan(max_z_[i])) {
    max_z_[i] = z;
    min_z_[i] = z;
  } else {
    max_z_[i] = std::max(max_z_[i], z);
    min_z_[i] = std::min(min_z_[i], z);
  }
}

namespace {

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.x, k.y, k.z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

std::int64_t cell_of(double v, double cell) {
  return static_cast<std::int64_t>(std::floor(v / cell));
}

}  // namespace

PointCloud voxel_downsample(const PointCloud& cloud, double leaf) {
  if (leaf <= 0.0) throw std::invalid_argument("voxel_downsample: leaf must be positive");
  struct Accum {
    Point3 sum;
    std::size_t count = 0;
    std::size_t order = 0;
  };
  std::unordered_map<CellKey, Accum, CellKeyHash> voxels;
  voxels.reserve(cloud.size());
  std::size_t next_order = 0;
  for (const Point3& p : cloud.points()) {
    CellKey key{cell_of(p.x, leaf), cell_of(p.y, leaf), cell_of(p.z, leaf)};
    auto [it, inserted] = voxels.try_emplace(key);
    if (inserted) it->second.order = next_order++;
    it->second.sum = it->second.sum + p;
    it->second.count++;
  }
  std::vector<const Accum*> ordered(voxels.size());
  for (const auto& [key, acc] : voxels) ordered[acc.order] = &acc;
  PointCloud out(cloud.frame());
  out.reserve(ordered.size());
  for (const Accum* acc : ordered)
    out.push_back(acc->sum * (1.0 / static_cast<double>(acc->count)));
  return out;
}

namespace {

/// Exact k-nearest-neighbor mean distances via a uniform grid over XY Z.
/// Rings of cells are expanded until the kth best distance is certain.
std::vector<double> knn_mean_distances(const std::vector<Point3>& pts, int k) {
  const std::size_t n = pts.size();
  // Pick a cell size from the bounding box so cells hold a handful of points.
  Point3 lo = pts[0], hi = pts[0];
  for (const Point3& p : pts) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
  }
  const double span = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z, 1e-9});
  const double cell = span / std::max(1.0, std::cbrt(static_cast<double>(n)));

  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
  for (std::size_t i = 0; i < n; ++i) {
    CellKey key{cell_of(pts[i].x - lo.x, cell), cell_of(pts[i].y - lo.y, cell),
                cell_of(pts[i].z - lo.z, cell)};
    grid[key].push_back(i);
  }

  std::vector<double> means(n);
  std::vector<double> best;
  for (std::size_t i = 0; i < n; ++i) {
    best.clear();
    const CellKey home{cell_of(pts[i].x - lo.x, cell), cell_of(pts[i].y - lo.y, cell),
                       cell_of(pts[i].z - lo.z, cell)};
    for (std::int64_t ring = 0;; ++ring) {
      // Points in cells at Chebyshev distance `ring` from home.
      for (std::int64_t dx = -ring; dx <= ring; ++dx) {
        for (std::int64_t dy = -ring; dy <= ring; ++dy) {
          for (std::int64_t dz = -ring; dz <= ring; ++dz) {
            if (std::max({std::llabs(dx), std::llabs(dy), std::llabs(dz)}) != ring) continue;
            auto it = grid.find(CellKey{home.x + dx, home.y + dy, home.z + dz});
            if (it == grid.end()) continue;
            for (std::size_t j : it->second) {
              if (j == i) continue;
              best.push_back(dist(pts[i], pts[j]));
            }
          }
        }
      }
      if (static_cast<int>(best.size()) >= k) {
        std::nth_element(best.begin(), best.begin() + (k - 1), best.end());
        // All unexplored cells lie at least `ring * cell` away from the
        // home cell boundary; once the kth distance is within that bound
        // no farther cell can improve it.
        if (best[k - 1] <= static_cast<double>(ring) * cell) break;
      }
      if (ring > 0 && best.size() + 1 >= n) {
        std::nth_element(best.begin(), best.begin() + (k - 1), best.end());
        break;
      }
    }
    double sum = 0.0;
    for (int j = 0; j < k; ++j) sum += best[j];
    means[i] = sum / k;
  }
  return means;
}

}  // namespace

PointCloud remove_outliers(const PointCloud& cloud, int k, double ratio) {
  if (k < 1) throw std::invalid_argument("remove_outliers: k must be >= 1");
  const std::size_t n = cloud.size();
  if (n < static_cast<std::size_t>(k) + 1) return cloud;

  const std::vector<double> means = knn_mean_distances(cloud.points(), k);
  double mu = 0.0;
  for (double m : means) mu += m;
  mu /= static_cast<double>(n);
  double var = 0.0;
  for (double m : means) var += (m - mu) * (m - mu);
  const double sigma = std::sqrt(var / static_cast<double>(n));
  const double threshold = mu + ratio * sigma;

  PointCloud out(cloud.frame());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (means[i] <= threshold) {
      if (cloud.has_labels())
        out.push_back(cloud[i], cloud.labels()[i]);
      else
        out.push_back(cloud[i]);
    }
  }
  return out;
}

PointCloud remove_ground(const PointCloud& cloud, double cell, double height_threshold) {
  if (cell <= 0.0) throw std::invalid_argument("remove_ground: cell must be positive");
  struct Bounds {
    double max_z, min_z;
  };
  std::unordered_map<CellKey, Bounds, CellKeyHash> cells;
  for (const Point3& p : cloud.points()) {
    CellKey key{cell_of(p.x, cell), cell_of(p.y, cell), 0};
    auto [it, inserted] = cells.try_emplace(key, Bounds{p.z, p.z});
    if (!inserted) {
      it->second.max_z = std::max(it->second.max_z, p.z);
      it->second.min_z = std::min(it->second.min_z, p.z);
    }
  }
  PointCloud out(cloud.frame());
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud[i];
    CellKey key{cell_of(p.x, cell), cell_of(p.y, cell), 0};
    if (cells.at(key).max_z < height_threshold) continue;
    if (cloud.has_labels())
      out.push_back(p, cloud.labels()[i]);
    else
      out.push_back(p);
  }
  return out;
}

PointCloud self_filter(const PointCloud& cloud, std::span<const OrientedBox> robot_volumes) {
  PointCloud out(cloud.frame());
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud[i];
    bool inside = false;
    for (const OrientedBox& box : robot_volumes) {
      if (box.contains(p)) {
        inside = true;
        break;
      }
    }
    if (inside) continue;
    if (cloud.has_labels())
      out.push_back(p, cloud.labels()[i]);
    else
      out.push_back(p);
  }
  return out;
}

Heightmap project_heightmap(const PointCloud& cloud, double origin_x, double origin_y,
                            double extent_x, double extent_y, double cell) {
  if (extent_x <= 0.0 || extent_y <= 0.0)
    throw std::invalid_argument("project_heightmap: extent must be positive in both axes");
  if (cell <= 0.0) throw std::invalid_argument("project_heightmap: cell must be positive");
  const int width = std::max(1, static_cast<int>(std::ceil(extent_x / cell)));
  const int height = std::max(1, static_cast<int>(std::ceil(extent_y / cell)));
  Heightmap hm(origin_x, origin_y, cell, width, height);
  for (const Point3& p : cloud.points()) {
    const int ix = static_cast<int>(std::floor((p.x - origin_x) / cell));
    const int iy = static_cast<int>(std::floor((p.y - origin_y) / cell));
    if (ix < 0 || ix >= width || iy < 0 || iy >= height) continue;
    hm.record(ix, iy, static_cast<float>(p.z));
  }
  return hm;
}

}  // namespace tidyup::geom
