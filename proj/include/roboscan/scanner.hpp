#pragma once

// Grid scanning: the probe visits Q(i,k) column by column (rows ascending
// inside a column) and every finished column k > 1 contributes two triangles
// per cell:
//   Q(i,k) -> Q(i-1,k)   -> Q(i-1,k-1)
//   Q(i,k) -> Q(i-1,k-1) -> Q(i,k-1)
// Grid point (i, k), 1-based, sits at (x0 + (i-1) row_spacing, y0 + (k-1) col_spacing).

#include "roboscan/kinematics.hpp"
#include "roboscan/motion.hpp"
#include "roboscan/scene.hpp"

#include <string>
#include <vector>

namespace roboscan {

struct ScanGrid {
  double x0 = 0.0;
  double y0 = 0.0;
  double safe_z = 50.0;
  int n_rows = 1;
  int n_cols = 1;
  double row_spacing = 1.0;
  double col_spacing = 1.0;
  double step = 5.0;         // waypoint spacing for the joint log
  bool serpentine = false;   // alternate row direction physically; indexing is unaffected

  void validate() const;
  /// 1-based lattice position.
  double x(int i) const { return x0 + (i - 1) * row_spacing; }
  double y(int k) const { return y0 + (k - 1) * col_spacing; }
  std::size_t size() const { return static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols); }
  /// Probe ordinal of Q(i,k): (k-1) n_rows + (i-1).
  std::uint64_t ordinal(int i, int k) const {
    return static_cast<std::uint64_t>(k - 1) * static_cast<std::uint64_t>(n_rows) + static_cast<std::uint64_t>(i - 1);
  }
};

/// n_rows x n_cols lattice of contacts, 1-based access.
class PointGrid {
 public:
  PointGrid() = default;
  PointGrid(int n_rows, int n_cols);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  ContactResult& at(int i, int k);
  const ContactResult& at(int i, int k) const;

  /// Measured points of contacted cells in probe order.
  PointCloud measured_points() const;

 private:
  int n_rows_ = 0, n_cols_ = 0;
  std::vector<ContactResult> cells_;  // column-major
};

struct TriangulateOptions {
  bool flip_normals = false;  // re-orient any downward facet upward
};

/// Triangles contributed when column k (2..n_cols) is complete.
void triangulate_column(const PointGrid& points, int k, TriangleMesh& out, const TriangulateOptions& opt = {});

TriangleMesh triangulate(const PointGrid& points, const TriangulateOptions& opt = {});

struct ScanSummary {
  std::size_t probed = 0;
  std::size_t mesh_contacts = 0;
  std::size_t table_contacts = 0;
  std::size_t misses = 0;
  std::size_t unreachable = 0;
  std::size_t triangles = 0;
};

struct ScanResult {
  PointGrid points;
  TriangleMesh mesh;
  JointTrace trace;
  ScanSummary summary;
};

/// Unreachable lattice points at safe height, as (i, k) 1-based pairs.
std::vector<std::pair<int, int>> unreachable_grid_points(const ScanGrid& grid, const RobotGeometry& geom);

/// Throws Error(kUnreachable) before probing if any lattice point is unreachable at safe height.
ScanResult run_scan(const ScanGrid& grid, const RobotGeometry& geom, const TargetScene& scene,
                    const NoiseModel& noise, const TriangulateOptions& opt = {});

}  // namespace roboscan
