#pragma once

// The virtual world probed by the scanner: a target mesh resting on a table
// plane, exact vertical ray casts, and the contact error model.

#include "roboscan/geometry.hpp"
#include "roboscan/spatial_index.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace roboscan {

enum class FloorMode { kTable, kSkip };

const char* to_string(FloorMode mode);

class TargetScene {
 public:
  /// Throws Error(kInvalidArgument) if the mesh is empty, non-finite or dips below the table.
  TargetScene(TriangleMesh mesh, double table_z = 0.0, FloorMode floor_mode = FloorMode::kTable);

  const TriangleMesh& mesh() const { return mesh_; }
  double table_z() const { return table_z_; }
  FloorMode floor_mode() const { return floor_mode_; }
  double top_z() const { return top_z_; }

  /// Highest intersection of the vertical line through (x, y) with the mesh.
  std::optional<double> raycast_down(double x, double y) const { return index_.max_hit(x, y); }

 private:
  TriangleMesh mesh_;
  double table_z_;
  FloorMode floor_mode_;
  double top_z_;
  VerticalRayIndex index_;
};

/// Contact error: e = N(0, sigma(r)^2) + drift_per_contact * index, where r is
/// the horizontal distance of the contact from the base axis and
/// sigma(r) = sigma_contact + sigma_per_mm * r.
struct NoiseModel {
  double sigma_contact = 0.0;
  double sigma_per_mm = 0.0;
  double drift_per_contact = 0.0;
  std::uint64_t seed = 1;

  double sigma_at(double reach) const { return sigma_contact + sigma_per_mm * reach; }
  void validate() const;
};

/// Per-job error stream. Contact k always uses the k-th standard normal of
/// the seeded sequence, whatever order the contacts are physically made in.
class ContactNoise {
 public:
  explicit ContactNoise(const NoiseModel& model);

  /// Error to add along the outward surface normal for contact `contact_index`.
  double error(std::uint64_t contact_index, double reach);

  const NoiseModel& model() const { return model_; }

 private:
  NoiseModel model_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::vector<double> draws_;
};

enum class ContactKind { kMesh, kTable, kNone, kUnreachable };

const char* to_string(ContactKind kind);

struct ContactResult {
  double x = 0.0;
  double y = 0.0;
  double z_true = 0.0;
  double z_measured = 0.0;
  ContactKind kind = ContactKind::kNone;
  std::uint64_t contact_index = 0;

  bool contacted() const { return kind == ContactKind::kMesh || kind == ContactKind::kTable; }
  Vec3 measured() const { return {x, y, z_measured}; }
};

/// One vertical touch at (x, y), the `contact_index`-th of the job.
ContactResult probe_contact(double x, double y, std::uint64_t contact_index, const TargetScene& scene,
                            ContactNoise& noise);

}  // namespace roboscan
