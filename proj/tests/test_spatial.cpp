#include "roboscan/scene.hpp"
#include "roboscan/spatial_index.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <optional>

using namespace roboscan;

namespace {

double brute_nearest(const PointCloud& pts, const Vec3& q) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) best = std::min(best, (p - q).norm());
  return best;
}

// Highest z of the vertical line through (x, y) over every triangle, solved
// per triangle with edge functions rather than the barycentric kernel.
std::optional<double> brute_raycast(const TriangleMesh& mesh, double x, double y) {
  std::optional<double> best;
  for (const auto& t : mesh) {
    auto edge = [&](const Vec3& a, const Vec3& b) { return (b.x() - a.x()) * (y - a.y()) - (b.y() - a.y()) * (x - a.x()); };
    const double area = edge(t.v1, t.v2) + edge(t.v2, t.v3) + edge(t.v3, t.v1);
    const double w3 = edge(t.v1, t.v2), w1 = edge(t.v2, t.v3), w2 = edge(t.v3, t.v1);
    if (std::abs(area) < 1e-12) continue;
    const double l1 = w1 / area, l2 = w2 / area, l3 = w3 / area;
    if (l1 < -1e-12 || l2 < -1e-12 || l3 < -1e-12) continue;
    const double z = l1 * t.v1.z() + l2 * t.v2.z() + l3 * t.v3.z();
    if (!best || z > *best) best = z;
  }
  return best;
}

}  // namespace

TEST_SUITE("spatial") {
  TEST_CASE("k-d tree distances equal brute force") {
    std::mt19937_64 rng(17);
    for (std::size_t n : {1, 2, 31, 32, 33, 100, 1000}) {
      const PointCloud pts = testing::random_cloud(rng, n, 10.0);
      for (std::size_t leaf : {1, 4, 32}) {
        const KdTree tree(pts, leaf);
        for (int q = 0; q < 200; ++q) {
          const Vec3 query = testing::random_cloud(rng, 1, 15.0)[0];
          CHECK(tree.nearest_distance(query) == brute_nearest(pts, query));
        }
        for (const auto& p : pts) CHECK(tree.nearest_distance(p) == 0.0);
      }
    }
  }

  TEST_CASE("k-d tree with duplicate and collinear points") {
    PointCloud pts;
    for (int i = 0; i < 100; ++i) pts.emplace_back(i % 3, 0, 0);
    const KdTree tree(pts, 4);
    CHECK(tree.nearest_distance({1.4, 0, 0}) == doctest::Approx(0.4));
    CHECK(tree.nearest_distance({5, 0, 0}) == 3.0);
  }

  TEST_CASE("planar hit and miss") {
    const TriangleMesh mesh{make_triangle({0, 0, 7}, {1, 0, 7}, {0, 1, 7})};
    const VerticalRayIndex index(mesh);
    CHECK(index.max_hit(0.25, 0.25) == 7.0);
    CHECK(index.max_hit(0.0, 0.0) == 7.0);   // vertex graze
    CHECK(index.max_hit(0.5, 0.5) == 7.0);   // hypotenuse graze
    CHECK_FALSE(index.max_hit(0.6, 0.6).has_value());
    CHECK_FALSE(index.max_hit(-3, 2).has_value());
  }

  TEST_CASE("vertical triangles are never hit") {
    const TriangleMesh mesh{make_triangle({0, 0, 0}, {1, 0, 0}, {0, 0, 1})};
    const VerticalRayIndex index(mesh);
    CHECK_FALSE(index.max_hit(0.5, 0.0).has_value());
  }

  TEST_CASE("a horizontal plane returns its height exactly") {
    const double c = 25.123456789;
    const TriangleMesh mesh{make_triangle({-100, -100, c}, {100, -100, c}, {100, 100, c}),
                            make_triangle({-100, -100, c}, {100, 100, c}, {-100, 100, c})};
    const VerticalRayIndex index(mesh);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 2000; ++i) CHECK(index.max_hit(u(rng), u(rng)) == c);
  }

  TEST_CASE("indexed ray casts equal brute force") {
    std::mt19937_64 rng(99);
    for (int m = 0; m < 10; ++m) {
      const auto mesh = testing::random_mesh(rng, 300, 50.0, 0.0, 40.0);
      const VerticalRayIndex index(mesh);
      RayTriangleSoA soa;
      for (const auto& t : mesh) soa.push_back(t);
      std::uniform_real_distribution<double> u(-60, 60);
      for (int q = 0; q < 500; ++q) {
        const double x = u(rng), y = u(rng);
        const auto a = index.max_hit(x, y);
        const auto b = brute_raycast(mesh, x, y);
        const auto c = max_vertical_hit_all(soa, x, y);
        REQUIRE(a.has_value() == b.has_value());
        CHECK(a == c);
        if (a) CHECK(std::abs(*a - *b) < 1e-9);
      }
    }
  }

  TEST_CASE("adding triangles never lowers a hit") {
    std::mt19937_64 rng(8);
    auto mesh = testing::random_mesh(rng, 50, 30.0, 0.0, 20.0);
    const VerticalRayIndex before(mesh);
    const auto extra = testing::random_mesh(rng, 50, 30.0, 0.0, 20.0);
    mesh.insert(mesh.end(), extra.begin(), extra.end());
    const VerticalRayIndex after(mesh);
    std::uniform_real_distribution<double> u(-35, 35);
    for (int q = 0; q < 2000; ++q) {
      const double x = u(rng), y = u(rng);
      const auto a = before.max_hit(x, y), b = after.max_hit(x, y);
      if (a) {
        REQUIRE(b.has_value());
        CHECK(*b >= *a);
      }
    }
  }
}
