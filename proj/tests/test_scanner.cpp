#include "roboscan/error.hpp"
#include "roboscan/scanner.hpp"
#include "roboscan/targets.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace roboscan;

namespace {

ScanGrid grid_at(double x0, double y0, int rows, int cols, double spacing) {
  ScanGrid g;
  g.x0 = x0;
  g.y0 = y0;
  g.n_rows = rows;
  g.n_cols = cols;
  g.row_spacing = spacing;
  g.col_spacing = spacing;
  g.safe_z = 50.0;
  g.step = 10.0;
  return g;
}

PointGrid synthetic(int rows, int cols, std::mt19937_64& rng) {
  PointGrid g(rows, cols);
  std::uniform_real_distribution<double> z(0, 3);
  for (int k = 1; k <= cols; ++k)
    for (int i = 1; i <= rows; ++i) {
      auto& c = g.at(i, k);
      c.x = 2.0 * (i - 1);
      c.y = 3.0 * (k - 1);
      c.z_true = c.z_measured = z(rng);
      c.kind = ContactKind::kMesh;
    }
  return g;
}

bool same_mesh(const TriangleMesh& a, const TriangleMesh& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].normal != b[i].normal || a[i].v1 != b[i].v1 || a[i].v2 != b[i].v2 || a[i].v3 != b[i].v3) return false;
  return true;
}

double signed_xy_area(const Triangle& t) {
  return 0.5 * ((t.v2.x() - t.v1.x()) * (t.v3.y() - t.v1.y()) - (t.v2.y() - t.v1.y()) * (t.v3.x() - t.v1.x()));
}

}  // namespace

TEST_SUITE("scanner") {
  TEST_CASE("grid validation and lattice formula") {
    ScanGrid g = grid_at(10, 20, 3, 4, 2.5);
    CHECK_NOTHROW(g.validate());
    CHECK(g.x(3) == 15.0);
    CHECK(g.y(4) == 27.5);
    CHECK(g.ordinal(1, 1) == 0);
    CHECK(g.ordinal(3, 2) == 5);
    g.n_rows = 0;
    CHECK_THROWS_AS(g.validate(), Error);
    g = grid_at(0, 0, 2, 2, 0.0);
    CHECK_THROWS_AS(g.validate(), Error);
  }

  TEST_CASE("two triangles of a 2x2 grid in the documented vertex order") {
    std::mt19937_64 rng(1);
    const PointGrid g = synthetic(2, 2, rng);
    const TriangleMesh mesh = triangulate(g);
    REQUIRE(mesh.size() == 2);
    CHECK(mesh[0].v1 == g.at(2, 2).measured());
    CHECK(mesh[0].v2 == g.at(1, 2).measured());
    CHECK(mesh[0].v3 == g.at(1, 1).measured());
    CHECK(mesh[1].v1 == g.at(2, 2).measured());
    CHECK(mesh[1].v2 == g.at(1, 1).measured());
    CHECK(mesh[1].v3 == g.at(2, 1).measured());
  }

  TEST_CASE("triangle count, normals and projected area") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> n(1, 12);
    for (int t = 0; t < 30; ++t) {
      const int r = n(rng), c = n(rng);
      const PointGrid g = synthetic(r, c, rng);
      const TriangleMesh mesh = triangulate(g);
      CHECK(mesh.size() == static_cast<std::size_t>(2 * (r - 1) * (c - 1)));
      double area = 0.0;
      for (const auto& tri : mesh) {
        CHECK(std::abs(tri.normal.norm() - 1.0) < 1e-7);
        CHECK((tri.normal - (tri.v2 - tri.v1).cross(tri.v3 - tri.v1).normalized()).norm() < 1e-7);
        area += std::abs(signed_xy_area(tri));
      }
      CHECK(area == doctest::Approx((r - 1) * (c - 1) * 2.0 * 3.0));
    }
  }

  TEST_CASE("interior edges are shared by exactly two triangles") {
    std::mt19937_64 rng(3);
    const int r = 6, c = 5;
    const PointGrid g = synthetic(r, c, rng);
    std::map<std::pair<std::pair<double, double>, std::pair<double, double>>, int> uses;
    for (const auto& t : triangulate(g)) {
      const Vec3* v[3] = {&t.v1, &t.v2, &t.v3};
      for (int e = 0; e < 3; ++e) {
        auto a = std::make_pair(v[e]->x(), v[e]->y());
        auto b = std::make_pair(v[(e + 1) % 3]->x(), v[(e + 1) % 3]->y());
        if (b < a) std::swap(a, b);
        ++uses[{a, b}];
      }
    }
    int boundary = 0;
    for (const auto& [edge, count] : uses) {
      CHECK(count <= 2);
      if (count == 1) ++boundary;
    }
    CHECK(boundary == 2 * (r - 1) + 2 * (c - 1));
  }

  TEST_CASE("every interior point is covered by exactly one triangle") {
    std::mt19937_64 rng(4);
    const PointGrid g = synthetic(5, 7, rng);
    const TriangleMesh mesh = triangulate(g);
    std::uniform_real_distribution<double> ux(0, 8), uy(0, 18);
    for (int q = 0; q < 2000; ++q) {
      const double x = ux(rng), y = uy(rng);
      int covering = 0;
      for (const auto& t : mesh) {
        const double a = signed_xy_area(t);
        auto side = [&](const Vec3& p1, const Vec3& p2) {
          return ((p2.x() - p1.x()) * (y - p1.y()) - (p2.y() - p1.y()) * (x - p1.x())) * (a > 0 ? 1 : -1);
        };
        if (side(t.v1, t.v2) > 0 && side(t.v2, t.v3) > 0 && side(t.v3, t.v1) > 0) ++covering;
      }
      CHECK(covering == 1);
    }
  }

  TEST_CASE("skipped cells drop their triangles") {
    std::mt19937_64 rng(5);
    PointGrid g = synthetic(4, 4, rng);
    g.at(2, 2).kind = ContactKind::kNone;
    CHECK(triangulate(g).size() == 18 - 8);
    g.at(2, 2).kind = ContactKind::kUnreachable;
    CHECK(triangulate(g).size() == 10);
  }

  TEST_CASE("flip_normals turns every facet upward") {
    std::mt19937_64 rng(6);
    PointGrid g = synthetic(5, 5, rng);
    // Mirror y so the documented order winds clockwise seen from above.
    for (int k = 1; k <= 5; ++k)
      for (int i = 1; i <= 5; ++i) g.at(i, k).y = -g.at(i, k).y;
    const TriangleMesh raw = triangulate(g);
    const TriangleMesh up = triangulate(g, {true});
    REQUIRE(raw.size() == up.size());
    for (std::size_t n = 0; n < raw.size(); ++n) {
      CHECK(raw[n].normal.z() < 0);
      CHECK(up[n].normal.z() > 0);
      CHECK(up[n].v1 == raw[n].v1);
    }
  }

  TEST_CASE("1x1 and 20x25 scans of a plate") {
    const RobotGeometry geom;
    const TargetScene scene(make_plate(200, 450, -100, 100, 25));
    const ScanResult one = run_scan(grid_at(300, 0, 1, 1, 6), geom, scene, NoiseModel{});
    CHECK(one.summary.probed == 1);
    CHECK(one.mesh.empty());

    const ScanResult full = run_scan(grid_at(253, -72, 20, 25, 6), geom, scene, NoiseModel{});
    CHECK(full.summary.probed == 500);
    CHECK(full.summary.mesh_contacts == 500);
    CHECK(full.mesh.size() == 912);
    CHECK(full.points.measured_points().size() == 500);
    for (const auto& t : full.mesh) {
      CHECK(std::abs(std::abs(t.normal.z()) - 1.0) < 1e-12);
      for (const Vec3* v : {&t.v1, &t.v2, &t.v3}) CHECK(v->z() == 25.0);
    }
    for (int k = 1; k <= 25; ++k)
      for (int i = 1; i <= 20; ++i) {
        CHECK(full.points.at(i, k).x == 253 + (i - 1) * 6.0);
        CHECK(full.points.at(i, k).y == -72 + (k - 1) * 6.0);
      }
    CHECK(same_mesh(full.mesh, triangulate(full.points)));  // incremental equals batch
  }

  TEST_CASE("noise follows the logical probe order") {
    const RobotGeometry geom;
    const TargetScene scene(make_plate(200, 450, -100, 100, 25));
    NoiseModel m;
    m.sigma_contact = 0.05;
    m.drift_per_contact = 1e-3;
    m.seed = 9;
    ScanGrid g = grid_at(280, -30, 4, 5, 10);
    const ScanResult plain = run_scan(g, geom, scene, m);
    g.serpentine = true;
    const ScanResult snake = run_scan(g, geom, scene, m);
    ContactNoise oracle(m);
    for (int k = 1; k <= 5; ++k)
      for (int i = 1; i <= 4; ++i) {
        const auto& c = plain.points.at(i, k);
        CHECK(c.contact_index == g.ordinal(i, k));
        CHECK(c.z_measured == 25.0 + oracle.error(g.ordinal(i, k), std::hypot(c.x, c.y)));
        CHECK(snake.points.at(i, k).z_measured == c.z_measured);
      }
    CHECK(same_mesh(plain.mesh, snake.mesh));
    CHECK(plain.trace.size() != 0);
  }

  TEST_CASE("unreachable lattice points abort before probing") {
    const RobotGeometry geom;
    const TargetScene scene(make_plate(200, 450, -100, 100, 25));
    ScanGrid g = grid_at(560, 0, 3, 3, 30);
    const auto bad = unreachable_grid_points(g, geom);
    REQUIRE_FALSE(bad.empty());
    try {
      run_scan(g, geom, scene, NoiseModel{});
      FAIL("expected an unreachable error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUnreachable);
      CHECK(std::string(e.what()).find("(" + std::to_string(bad[0].first) + "," + std::to_string(bad[0].second) +
                                       ")") != std::string::npos);
    }
  }

  TEST_CASE("safe height must clear the target") {
    const TargetScene scene(make_plate(200, 450, -100, 100, 25));
    ScanGrid g = grid_at(300, 0, 2, 2, 5);
    g.safe_z = 20;
    CHECK_THROWS_AS(run_scan(g, RobotGeometry{}, scene, NoiseModel{}), Error);
  }

  TEST_CASE("skip mode leaves gaps around a small target") {
    const RobotGeometry geom;
    const TargetScene scene(make_plate(309, 321, -6, 6, 10), 0.0, FloorMode::kSkip);
    const ScanResult r = run_scan(grid_at(300, -15, 6, 6, 6), geom, scene, NoiseModel{});
    CHECK(r.summary.misses > 0);
    CHECK(r.summary.mesh_contacts + r.summary.misses == 36);
    CHECK(r.mesh.size() < 50);
  }
}
