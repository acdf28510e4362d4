#pragma once

#include "roboscan/geometry.hpp"
#include "roboscan/simd/kernels.hpp"

#include <optional>
#include <vector>

namespace roboscan {

/// Static 3-d tree for exact nearest-neighbour distance queries.
class KdTree {
 public:
  explicit KdTree(const PointCloud& points, std::size_t leaf_size = 32);

  /// Euclidean distance to the nearest stored point. The tree must be non-empty.
  double nearest_distance(const Vec3& query) const;

  std::size_t size() const { return x_.size(); }

 private:
  struct Node {
    int axis = -1;  // -1 marks a leaf
    double split = 0.0;
    std::size_t begin = 0, end = 0;  // leaf range in the SoA arrays
    int left = -1, right = -1;
  };

  int build(std::vector<Vec3>& pts, std::size_t begin, std::size_t end);
  void search(int node, const Vec3& q, double& best_sq) const;

  std::size_t leaf_size_;
  std::vector<Node> nodes_;
  std::vector<double> x_, y_, z_;
};

/// Triangle data in the layout consumed by the vertical-ray kernels.
class RayTriangleSoA {
 public:
  void push_back(const Triangle& t);  // silently drops vertical triangles
  simd::RayTriangleBlock block() const;
  std::size_t size() const { return ax_.size(); }

 private:
  std::vector<double> ax_, ay_, az_, e1x_, e1y_, e2x_, e2y_, dz1_, dz2_, det_;
};

/// Uniform xy bucket grid over a mesh answering "highest surface under (x, y)".
class VerticalRayIndex {
 public:
  explicit VerticalRayIndex(const TriangleMesh& mesh);

  std::optional<double> max_hit(double x, double y) const;

 private:
  double x0_ = 0, y0_ = 0, cell_w_ = 1, cell_h_ = 1;
  int nx_ = 0, ny_ = 0;
  std::vector<RayTriangleSoA> cells_;
};

/// O(triangles) scan of every triangle through the active kernel.
std::optional<double> max_vertical_hit_all(const RayTriangleSoA& tris, double x, double y);

}  // namespace roboscan
