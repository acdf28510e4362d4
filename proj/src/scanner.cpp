#include "roboscan/scanner.hpp"

#include "roboscan/error.hpp"

#include <cmath>
#include <sstream>

namespace roboscan {

void ScanGrid::validate() const {
  if (n_rows < 1 || n_cols < 1) throw Error(ErrorKind::kInvalidArgument, "grid: rows and cols must be >= 1");
  if (!(row_spacing > 0 && col_spacing > 0 && std::isfinite(row_spacing) && std::isfinite(col_spacing)))
    throw Error(ErrorKind::kInvalidArgument, "grid: spacings must be finite and > 0");
  if (!(std::isfinite(x0) && std::isfinite(y0) && std::isfinite(safe_z)))
    throw Error(ErrorKind::kInvalidArgument, "grid: corner and safe_z must be finite");
  if (!(step > 0 && std::isfinite(step))) throw Error(ErrorKind::kInvalidArgument, "grid: step must be > 0");
}

PointGrid::PointGrid(int n_rows, int n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), cells_(static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols)) {}

ContactResult& PointGrid::at(int i, int k) {
  return cells_[static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(n_rows_) + static_cast<std::size_t>(i - 1)];
}

const ContactResult& PointGrid::at(int i, int k) const {
  return cells_[static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(n_rows_) + static_cast<std::size_t>(i - 1)];
}

PointCloud PointGrid::measured_points() const {
  PointCloud out;
  out.reserve(cells_.size());
  for (const auto& c : cells_)
    if (c.contacted()) out.push_back(c.measured());
  return out;
}

namespace {

void emit(const Vec3& a, const Vec3& b, const Vec3& c, TriangleMesh& out, const TriangulateOptions& opt) {
  Triangle t = make_triangle(a, b, c);
  if (t.normal.isZero(0.0)) return;  // collinear
  if (opt.flip_normals && t.normal.z() < 0) t = make_triangle(a, c, b);
  out.push_back(t);
}

}  // namespace

void triangulate_column(const PointGrid& g, int k, TriangleMesh& out, const TriangulateOptions& opt) {
  if (k < 2 || k > g.n_cols()) return;
  for (int i = 2; i <= g.n_rows(); ++i) {
    const auto& q = g.at(i, k);
    const auto& up = g.at(i - 1, k);
    const auto& diag = g.at(i - 1, k - 1);
    const auto& left = g.at(i, k - 1);
    if (!(q.contacted() && up.contacted() && diag.contacted() && left.contacted())) continue;
    emit(q.measured(), up.measured(), diag.measured(), out, opt);
    emit(q.measured(), diag.measured(), left.measured(), out, opt);
  }
}

TriangleMesh triangulate(const PointGrid& points, const TriangulateOptions& opt) {
  TriangleMesh mesh;
  if (points.n_rows() > 1 && points.n_cols() > 1)
    mesh.reserve(2 * static_cast<std::size_t>(points.n_rows() - 1) * static_cast<std::size_t>(points.n_cols() - 1));
  for (int k = 2; k <= points.n_cols(); ++k) triangulate_column(points, k, mesh, opt);
  return mesh;
}

std::vector<std::pair<int, int>> unreachable_grid_points(const ScanGrid& grid, const RobotGeometry& geom) {
  std::vector<std::pair<int, int>> bad;
  for (int k = 1; k <= grid.n_cols; ++k)
    for (int i = 1; i <= grid.n_rows; ++i)
      if (!is_reachable(Vec3(grid.x(i), grid.y(k), grid.safe_z), geom).reachable) bad.emplace_back(i, k);
  return bad;
}

ScanResult run_scan(const ScanGrid& grid, const RobotGeometry& geom, const TargetScene& scene,
                    const NoiseModel& noise_model, const TriangulateOptions& opt) {
  grid.validate();
  geom.validate();
  noise_model.validate();
  if (!(grid.safe_z > scene.top_z())) {
    std::ostringstream os;
    os << "grid: safe_z " << grid.safe_z << " is not above the target top " << scene.top_z();
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
  if (const auto bad = unreachable_grid_points(grid, geom); !bad.empty()) {
    std::ostringstream os;
    os << bad.size() << " grid point(s) unreachable at safe height:";
    for (std::size_t n = 0; n < bad.size() && n < 20; ++n) os << " (" << bad[n].first << "," << bad[n].second << ")";
    if (bad.size() > 20) os << " ...";
    throw Error(ErrorKind::kUnreachable, os.str());
  }

  ScanResult result;
  result.points = PointGrid(grid.n_rows, grid.n_cols);
  ContactNoise noise(noise_model);
  const CycleParams params{grid.safe_z, grid.step};
  std::optional<Vec3> from;
  for (int k = 1; k <= grid.n_cols; ++k) {
    const bool reverse = grid.serpentine && (k % 2 == 0);
    for (int n = 1; n <= grid.n_rows; ++n) {
      const int i = reverse ? grid.n_rows + 1 - n : n;
      const std::size_t next_index = result.trace.empty() ? 0 : result.trace.back().index + 1;
      ProbeCycle cycle = probe_cycle(grid.x(i), grid.y(k), grid.ordinal(i, k), params, scene, noise, geom, from,
                                     next_index);
      result.points.at(i, k) = cycle.contact;
      result.trace.insert(result.trace.end(), cycle.trace.begin(), cycle.trace.end());
      from = Vec3(grid.x(i), grid.y(k), grid.safe_z);

      auto& s = result.summary;
      ++s.probed;
      switch (cycle.contact.kind) {
        case ContactKind::kMesh: ++s.mesh_contacts; break;
        case ContactKind::kTable: ++s.table_contacts; break;
        case ContactKind::kNone: ++s.misses; break;
        case ContactKind::kUnreachable: ++s.unreachable; break;
      }
    }
    triangulate_column(result.points, k, result.mesh, opt);
  }
  result.summary.triangles = result.mesh.size();
  return result;
}

}  // namespace roboscan
