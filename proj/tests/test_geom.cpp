#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "tidyup/geom.hpp"

using namespace tidyup::geom;

namespace {

PointCloud random_cloud(unsigned seed, int n, double span = 1.0, const std::string& frame = "base") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, span);
  PointCloud c(frame);
  for (int i = 0; i < n; ++i) c.push_back({u(rng), u(rng), u(rng)});
  return c;
}

std::multiset<std::tuple<double, double, double>> as_set(const PointCloud& c) {
  std::multiset<std::tuple<double, double, double>> s;
  for (const Point3& p : c.points()) s.insert({p.x, p.y, p.z});
  return s;
}

}  // namespace

TEST_CASE("voxel_downsample basics") {
  PointCloud empty("base");
  CHECK(voxel_downsample(empty, 0.1).empty());

  // 8 points inside one 0.1 m voxel collapse to their centroid.
  PointCloud c("base");
  double sx = 0, sy = 0, sz = 0;
  for (int i = 0; i < 8; ++i) {
    Point3 p{0.01 + 0.002 * i, 0.03 + 0.001 * i, 0.05 + 0.003 * i};
    sx += p.x; sy += p.y; sz += p.z;
    c.push_back(p);
  }
  PointCloud d = voxel_downsample(c, 0.1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].x == doctest::Approx(sx / 8).epsilon(1e-12));
  CHECK(d[0].y == doctest::Approx(sy / 8).epsilon(1e-12));
  CHECK(d[0].z == doctest::Approx(sz / 8).epsilon(1e-12));
  CHECK(d.frame() == "base");

  CHECK_THROWS_AS(voxel_downsample(c, 0.0), std::invalid_argument);
}

TEST_CASE("voxel_downsample matches hash-grid occupancy oracle") {
  for (unsigned seed : {1u, 2u, 3u}) {
    PointCloud c = random_cloud(seed, 1000, 1.0);
    const double leaf = 0.05;
    PointCloud d = voxel_downsample(c, leaf);

    // Oracle: brute-force voxel hashing, counting occupied voxels.
    std::set<std::tuple<long, long, long>> occupied;
    for (const Point3& p : c.points()) {
      occupied.insert({static_cast<long>(std::floor(p.x / leaf)),
                       static_cast<long>(std::floor(p.y / leaf)),
                       static_cast<long>(std::floor(p.z / leaf))});
    }
    CHECK(d.size() == occupied.size());

    // Idempotence.
    PointCloud dd = voxel_downsample(d, leaf);
    CHECK(as_set(dd) == as_set(d));
  }
}

TEST_CASE("remove_outliers drops an isolated point") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 0.05);
  PointCloud c("base");
  for (int i = 0; i < 50; ++i) c.push_back({g(rng), g(rng), g(rng)});
  c.push_back({10.0, 0.0, 0.0});
  PointCloud out = remove_outliers(c, 5, 1.0);
  for (const Point3& p : out.points()) CHECK(p.x < 5.0);
  CHECK(out.size() < c.size());
  CHECK(out.size() >= 45);
}

TEST_CASE("remove_outliers keeps a uniform grid unchanged") {
  PointCloud c("base");
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      for (int z = 0; z < 5; ++z) c.push_back({x * 0.1, y * 0.1, z * 0.1});
  // Interior and surface points have different kNN distances; the corner
  // points of this lattice sit 2.1 sigma out, so ratio 3 keeps everything.
  PointCloud out = remove_outliers(c, 6, 3.0);
  CHECK(out.size() == c.size());
  PointCloud again = remove_outliers(out, 6, 3.0);
  CHECK(as_set(again) == as_set(out));
}

TEST_CASE("remove_outliers matches exhaustive kNN oracle") {
  for (unsigned seed : {11u, 12u, 13u, 14u}) {
    PointCloud c = random_cloud(seed, 300, 1.0);
    const int k = 10;
    const double ratio = 1.0;
    PointCloud out = remove_outliers(c, k, ratio);

    // Oracle: O(n^2) exhaustive neighbor search.
    const auto& pts = c.points();
    std::vector<double> means(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<double> d;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) d.push_back(dist(pts[i], pts[j]));
      std::sort(d.begin(), d.end());
      double s = 0;
      for (int m = 0; m < k; ++m) s += d[m];
      means[i] = s / k;
    }
    double mu = 0;
    for (double m : means) mu += m;
    mu /= means.size();
    double var = 0;
    for (double m : means) var += (m - mu) * (m - mu);
    const double sigma = std::sqrt(var / means.size());
    PointCloud expect(c.frame());
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (means[i] <= mu + ratio * sigma) expect.push_back(pts[i]);

    REQUIRE(out.size() == expect.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].x == expect[i].x);
      CHECK(out[i].y == expect[i].y);
      CHECK(out[i].z == expect[i].z);
    }
  }
}

TEST_CASE("remove_outliers returns small clouds unchanged") {
  PointCloud c = random_cloud(5, 5);
  PointCloud out = remove_outliers(c, 10, 1.0);
  CHECK(out.size() == 5);
  CHECK_THROWS_AS(remove_outliers(c, 0, 1.0), std::invalid_argument);
}

TEST_CASE("remove_ground filters flat cells") {
  PointCloud plane("base");
  for (int x = 0; x < 20; ++x)
    for (int y = 0; y < 20; ++y) plane.push_back({x * 0.05, y * 0.05, 0.0});
  CHECK(remove_ground(plane, 0.1, 0.05).empty());

  // Plane plus a 0.3 m box well inside one cell: only that cell survives.
  PointCloud scene = plane;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) scene.push_back({0.63 + x * 0.015, 0.63 + y * 0.015, 0.3});
  PointCloud out = remove_ground(scene, 0.1, 0.05);
  CHECK(!out.empty());
  for (const Point3& p : out.points()) {
    CHECK(p.x >= 0.6);
    CHECK(p.x < 0.7);
    CHECK(p.y >= 0.6);
    CHECK(p.y < 0.7);
  }
}

TEST_CASE("remove_ground matches per-cell oracle and is permutation invariant") {
  for (unsigned seed : {21u, 22u}) {
    PointCloud c = random_cloud(seed, 500, 2.0);
    const double cell = 0.1, thr = 1.0;
    PointCloud out = remove_ground(c, cell, thr);

    // Oracle: recompute the per-cell rule directly.
    std::map<std::pair<long, long>, double> cellmax;
    for (const Point3& p : c.points()) {
      auto key = std::make_pair(static_cast<long>(std::floor(p.x / cell)),
                                static_cast<long>(std::floor(p.y / cell)));
      auto it = cellmax.find(key);
      if (it == cellmax.end())
        cellmax[key] = p.z;
      else
        it->second = std::max(it->second, p.z);
    }
    PointCloud expect(c.frame());
    for (const Point3& p : c.points()) {
      auto key = std::make_pair(static_cast<long>(std::floor(p.x / cell)),
                                static_cast<long>(std::floor(p.y / cell)));
      if (cellmax[key] >= thr) expect.push_back(p);
    }
    CHECK(as_set(out) == as_set(expect));

    // Permutation invariance (as a set) and idempotence.
    PointCloud shuffled(c.frame());
    std::vector<Point3> pts = c.points();
    std::mt19937_64 rng(seed + 100);
    std::shuffle(pts.begin(), pts.end(), rng);
    for (const Point3& p : pts) shuffled.push_back(p);
    CHECK(as_set(remove_ground(shuffled, cell, thr)) == as_set(out));
    CHECK(as_set(remove_ground(out, cell, thr)) == as_set(out));
  }
}

TEST_CASE("self_filter removes points inside robot volumes") {
  PointCloud c = random_cloud(31, 200, 1.0);
  CHECK(as_set(self_filter(c, {})) == as_set(c));

  OrientedBox everything{{0.5, 0.5, 0.5}, 2.0, 2.0, 2.0, 0.0};
  CHECK(self_filter(c, std::span(&everything, 1)).empty());

  // Oracle agreement on a yawed arm box.
  OrientedBox arm{{0.5, 0.5, 0.6}, 0.4, 0.15, 0.2, 0.7};
  PointCloud out = self_filter(c, std::span(&arm, 1));
  PointCloud expect(c.frame());
  for (const Point3& p : c.points()) {
    const double cs = std::cos(-arm.yaw), sn = std::sin(-arm.yaw);
    const double lx = cs * (p.x - arm.center.x) - sn * (p.y - arm.center.y);
    const double ly = sn * (p.x - arm.center.x) + cs * (p.y - arm.center.y);
    const bool inside = std::abs(lx) <= 0.2 && std::abs(ly) <= 0.075 &&
                        std::abs(p.z - 0.6) <= 0.1;
    if (!inside) expect.push_back(p);
  }
  CHECK(as_set(out) == as_set(expect));
  CHECK(as_set(self_filter(out, std::span(&arm, 1))) == as_set(out));
}

TEST_CASE("self_filter and remove_ground commute when boxes hover over tall points") {
  // Arm volume above the threshold, hovering over a grasped object whose
  // own points keep every covered cell non-ground.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointCloud c("base");
  for (int i = 0; i < 300; ++i) c.push_back({u(rng), u(rng), 0.01 * u(rng)});  // ground
  for (int i = 0; i < 60; ++i)
    c.push_back({0.4 + 0.1 * u(rng), 0.4 + 0.1 * u(rng), 0.2 + 0.1 * u(rng)});  // object
  for (int i = 0; i < 40; ++i)
    c.push_back({0.4 + 0.1 * u(rng), 0.4 + 0.1 * u(rng), 0.5 + 0.05 * u(rng)});  // arm points
  OrientedBox arm{{0.45, 0.45, 0.55}, 0.3, 0.3, 0.2, 0.0};
  const double cell = 0.1, thr = 0.05;

  PointCloud a = self_filter(remove_ground(c, cell, thr), std::span(&arm, 1));
  PointCloud b = remove_ground(self_filter(c, std::span(&arm, 1)), cell, thr);
  CHECK(as_set(a) == as_set(b));
}

TEST_CASE("project_heightmap singles and max rule") {
  PointCloud c("base");
  c.push_back({0.52, 0.31, 0.7});
  Heightmap hm = project_heightmap(c, 0.0, 0.0, 1.0, 1.0, 0.1);
  int found = 0;
  for (int iy = 0; iy < hm.height(); ++iy)
    for (int ix = 0; ix < hm.width(); ++ix)
      if (hm.valid(ix, iy)) {
        ++found;
        CHECK(hm.max_at(ix, iy) == doctest::Approx(0.7f));
        CHECK(ix == 5);
        CHECK(iy == 3);
      }
  CHECK(found == 1);

  c.push_back({0.53, 0.32, 0.9});
  Heightmap hm2 = project_heightmap(c, 0.0, 0.0, 1.0, 1.0, 0.1);
  CHECK(hm2.max_at(5, 3) == doctest::Approx(0.9f));
  CHECK(hm2.min_at(5, 3) == doctest::Approx(0.7f));
}

TEST_CASE("project_heightmap matches per-cell max oracle") {
  PointCloud c = random_cloud(51, 400, 1.0);
  const double cell = 0.05;
  Heightmap hm = project_heightmap(c, 0.0, 0.0, 1.0, 1.0, cell);
  std::map<std::pair<int, int>, float> oracle;
  for (const Point3& p : c.points()) {
    const int ix = static_cast<int>(std::floor(p.x / cell));
    const int iy = static_cast<int>(std::floor(p.y / cell));
    if (ix < 0 || ix >= hm.width() || iy < 0 || iy >= hm.height()) continue;
    auto key = std::make_pair(ix, iy);
    auto it = oracle.find(key);
    const float z = static_cast<float>(p.z);
    if (it == oracle.end())
      oracle[key] = z;
    else
      it->second = std::max(it->second, z);
  }
  for (int iy = 0; iy < hm.height(); ++iy)
    for (int ix = 0; ix < hm.width(); ++ix) {
      auto it = oracle.find({ix, iy});
      if (it == oracle.end()) {
        CHECK(!hm.valid(ix, iy));
      } else {
        REQUIRE(hm.valid(ix, iy));
        CHECK(hm.max_at(ix, iy) == doctest::Approx(it->second));
      }
    }
}

TEST_CASE("frame tags are enforced") {
  PointCloud c("camera");
  CHECK_THROWS_AS(c.require_frame("base"), std::invalid_argument);
  CHECK_NOTHROW(c.require_frame("camera"));
}

TEST_CASE("angle normalization") {
  CHECK(normalize_angle(3 * kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
  CHECK(normalize_angle(0.3) == doctest::Approx(0.3));
  CHECK(normalize_half_angle(kPi / 2 + 0.1) == doctest::Approx(-kPi / 2 + 0.1));
  CHECK(normalize_half_angle(-kPi / 2) == doctest::Approx(kPi / 2));
}
