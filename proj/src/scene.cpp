#include "roboscan/scene.hpp"

#include "roboscan/error.hpp"

#include <cmath>
#include <sstream>

namespace roboscan {

const char* to_string(FloorMode mode) { return mode == FloorMode::kTable ? "table" : "skip"; }

const char* to_string(ContactKind kind) {
  switch (kind) {
    case ContactKind::kMesh: return "mesh";
    case ContactKind::kTable: return "table";
    case ContactKind::kNone: return "none";
    case ContactKind::kUnreachable: return "unreachable";
  }
  return "unknown";
}

namespace {

const TriangleMesh& checked(const TriangleMesh& mesh, double table_z) {
  if (mesh.empty()) throw Error(ErrorKind::kInvalidArgument, "scene: target mesh is empty");
  if (!std::isfinite(table_z)) throw Error(ErrorKind::kInvalidArgument, "scene: table_z is not finite");
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const auto& t = mesh[i];
    for (const Vec3* v : {&t.v1, &t.v2, &t.v3}) {
      if (!v->allFinite()) {
        throw Error(ErrorKind::kInvalidArgument, "scene: triangle " + std::to_string(i) + " has a non-finite vertex");
      }
      if (v->z() < table_z - 1e-6) {
        std::ostringstream os;
        os << "scene: triangle " << i << " vertex z=" << v->z() << " is below the table at " << table_z;
        throw Error(ErrorKind::kInvalidArgument, os.str());
      }
    }
  }
  return mesh;
}

}  // namespace

TargetScene::TargetScene(TriangleMesh mesh, double table_z, FloorMode floor_mode)
    : mesh_(std::move(mesh)),
      table_z_(table_z),
      floor_mode_(floor_mode),
      top_z_(bounding_box(checked(mesh_, table_z)).hi.z()),
      index_(mesh_) {}

void NoiseModel::validate() const {
  if (!(std::isfinite(sigma_contact) && sigma_contact >= 0))
    throw Error(ErrorKind::kInvalidArgument, "noise: sigma must be finite and >= 0");
  if (!(std::isfinite(sigma_per_mm) && sigma_per_mm >= 0))
    throw Error(ErrorKind::kInvalidArgument, "noise: sigma_per_mm must be finite and >= 0");
  if (!std::isfinite(drift_per_contact)) throw Error(ErrorKind::kInvalidArgument, "noise: drift must be finite");
}

ContactNoise::ContactNoise(const NoiseModel& model) : model_(model), rng_(model.seed) { model_.validate(); }

double ContactNoise::error(std::uint64_t contact_index, double reach) {
  while (draws_.size() <= contact_index) draws_.push_back(normal_(rng_));
  const double z = draws_[contact_index];
  return model_.sigma_at(reach) * z + model_.drift_per_contact * static_cast<double>(contact_index);
}

ContactResult probe_contact(double x, double y, std::uint64_t contact_index, const TargetScene& scene,
                            ContactNoise& noise) {
  ContactResult c;
  c.x = x;
  c.y = y;
  c.contact_index = contact_index;
  const double err = noise.error(contact_index, std::hypot(x, y));
  if (const auto hit = scene.raycast_down(x, y); hit && *hit >= scene.table_z()) {
    c.kind = ContactKind::kMesh;
    c.z_true = *hit;
  } else if (scene.floor_mode() == FloorMode::kTable) {
    c.kind = ContactKind::kTable;
    c.z_true = scene.table_z();
  } else {
    c.kind = ContactKind::kNone;
    c.z_true = scene.table_z();
    c.z_measured = c.z_true;
    return c;
  }
  c.z_measured = c.z_true + err;
  return c;
}

}  // namespace roboscan
