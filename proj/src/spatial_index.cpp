#include "roboscan/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roboscan {

KdTree::KdTree(const PointCloud& points, std::size_t leaf_size) : leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  std::vector<Vec3> pts(points.begin(), points.end());
  x_.resize(pts.size());
  y_.resize(pts.size());
  z_.resize(pts.size());
  if (!pts.empty()) build(pts, 0, pts.size());
}

int KdTree::build(std::vector<Vec3>& pts, std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  if (end - begin <= leaf_size_) {
    for (std::size_t i = begin; i < end; ++i) {
      x_[i] = pts[i].x();
      y_[i] = pts[i].y();
      z_[i] = pts[i].z();
    }
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  Vec3 lo = pts[begin], hi = pts[begin];
  for (std::size_t i = begin; i < end; ++i) {
    lo = lo.cwiseMin(pts[i]);
    hi = hi.cwiseMax(pts[i]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(pts.begin() + static_cast<std::ptrdiff_t>(begin), pts.begin() + static_cast<std::ptrdiff_t>(mid),
                   pts.begin() + static_cast<std::ptrdiff_t>(end),
                   [axis](const Vec3& a, const Vec3& b) { return a[axis] < b[axis]; });
  const double split = pts[mid][axis];
  const int left = build(pts, begin, mid);
  const int right = build(pts, mid, end);
  Node& n = nodes_[id];
  n.axis = axis;
  n.split = split;
  n.left = left;
  n.right = right;
  return id;
}

void KdTree::search(int id, const Vec3& q, double& best_sq) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  if (n.axis < 0) {
    const simd::PointBlock block{x_.data() + n.begin, y_.data() + n.begin, z_.data() + n.begin, n.end - n.begin};
    const double d = simd::active_kernels().min_sq_distance(block, q.x(), q.y(), q.z());
    best_sq = std::min(best_sq, d);
    return;
  }
  // Left holds coordinates <= split, right holds coordinates >= split.
  const double diff = q[n.axis] - n.split;
  const int near = diff < 0 ? n.left : n.right;
  const int far = diff < 0 ? n.right : n.left;
  search(near, q, best_sq);
  if (diff * diff <= best_sq) search(far, q, best_sq);
}

double KdTree::nearest_distance(const Vec3& query) const {
  double best = std::numeric_limits<double>::infinity();
  if (!nodes_.empty()) search(0, query, best);
  return std::sqrt(best);
}

void RayTriangleSoA::push_back(const Triangle& t) {
  const double e1x = t.v2.x() - t.v1.x();
  const double e1y = t.v2.y() - t.v1.y();
  const double e2x = t.v3.x() - t.v1.x();
  const double e2y = t.v3.y() - t.v1.y();
  const double det = e1x * e2y - e1y * e2x;
  if (!(std::abs(det) >= simd::kParallelThreshold)) return;
  ax_.push_back(t.v1.x());
  ay_.push_back(t.v1.y());
  az_.push_back(t.v1.z());
  e1x_.push_back(e1x);
  e1y_.push_back(e1y);
  e2x_.push_back(e2x);
  e2y_.push_back(e2y);
  dz1_.push_back(t.v2.z() - t.v1.z());
  dz2_.push_back(t.v3.z() - t.v1.z());
  det_.push_back(det);
}

simd::RayTriangleBlock RayTriangleSoA::block() const {
  return {ax_.data(),  ay_.data(),  az_.data(),  e1x_.data(), e1y_.data(), e2x_.data(),
          e2y_.data(), dz1_.data(), dz2_.data(), det_.data(), ax_.size()};
}

std::optional<double> max_vertical_hit_all(const RayTriangleSoA& tris, double x, double y) {
  const double z = simd::active_kernels().max_vertical_hit(tris.block(), x, y);
  if (z == -std::numeric_limits<double>::infinity()) return std::nullopt;
  return z;
}

VerticalRayIndex::VerticalRayIndex(const TriangleMesh& mesh) {
  if (mesh.empty()) return;
  const Aabb box = bounding_box(mesh);
  // Pad so that edge grazes on the outer boundary still land in a cell.
  const double pad = 1e-6 * std::max(1.0, (box.hi - box.lo).head<2>().maxCoeff());
  x0_ = box.lo.x() - pad;
  y0_ = box.lo.y() - pad;
  const double w = box.hi.x() - box.lo.x() + 2 * pad;
  const double h = box.hi.y() - box.lo.y() + 2 * pad;
  const int side = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(mesh.size()))), 1, 512);
  nx_ = side;
  ny_ = side;
  cell_w_ = w / nx_;
  cell_h_ = h / ny_;
  cells_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));

  auto clamp_x = [&](double v) { return std::clamp(static_cast<int>(std::floor((v - x0_) / cell_w_)), 0, nx_ - 1); };
  auto clamp_y = [&](double v) { return std::clamp(static_cast<int>(std::floor((v - y0_) / cell_h_)), 0, ny_ - 1); };
  for (const auto& t : mesh) {
    const double lx = std::min({t.v1.x(), t.v2.x(), t.v3.x()}) - pad;
    const double hx = std::max({t.v1.x(), t.v2.x(), t.v3.x()}) + pad;
    const double ly = std::min({t.v1.y(), t.v2.y(), t.v3.y()}) - pad;
    const double hy = std::max({t.v1.y(), t.v2.y(), t.v3.y()}) + pad;
    for (int cy = clamp_y(ly); cy <= clamp_y(hy); ++cy)
      for (int cx = clamp_x(lx); cx <= clamp_x(hx); ++cx)
        cells_[static_cast<std::size_t>(cy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(cx)].push_back(t);
  }
}

std::optional<double> VerticalRayIndex::max_hit(double x, double y) const {
  if (cells_.empty()) return std::nullopt;
  const double fx = std::floor((x - x0_) / cell_w_);
  const double fy = std::floor((y - y0_) / cell_h_);
  if (!(fx >= 0 && fy >= 0 && fx < nx_ && fy < ny_)) return std::nullopt;
  const auto& cell = cells_[static_cast<std::size_t>(fy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(fx)];
  return max_vertical_hit_all(cell, x, y);
}

}  // namespace roboscan
