#include "roboscan/motion.hpp"

#include "roboscan/error.hpp"

#include <cmath>
#include <sstream>

namespace roboscan {

std::vector<Vec3> interpolate_line(const LinearPath& path) {
  if (!(path.step > 0) || !std::isfinite(path.step))
    throw Error(ErrorKind::kInvalidArgument, "linear path: step must be > 0");
  const Vec3 delta = path.end - path.start;
  const double length = delta.norm();
  // The 1e-9 slack keeps exact multiples (100 mm at 10 mm) from gaining a waypoint.
  const auto segments = static_cast<std::size_t>(std::max(0.0, std::ceil(length / path.step - 1e-9)));
  std::vector<Vec3> out;
  out.reserve(segments + 1);
  out.push_back(path.start);
  for (std::size_t j = 1; j < segments; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(segments);
    out.push_back(path.start + delta * t);
  }
  if (segments > 0) out.push_back(path.end);
  return out;
}

JointTrace plan_line(const LinearPath& path, const RobotGeometry& geom, std::size_t first_index) {
  const auto points = interpolate_line(path);
  JointTrace trace;
  trace.reserve(points.size());
  Pose pose;
  pose.rotation = path.orientation;
  for (std::size_t j = 0; j < points.size(); ++j) {
    pose.position = points[j];
    const IkSolution sol = inverse_kinematics(pose, geom);
    if (!sol.ok()) {
      std::ostringstream os;
      os << "waypoint " << j << " at (" << points[j].x() << ", " << points[j].y() << ", " << points[j].z()
         << "): " << sol.detail;
      throw Error(sol.status == IkStatus::kJointLimit ? ErrorKind::kJointLimit : ErrorKind::kUnreachable, os.str());
    }
    trace.push_back({first_index + j, sol.angles, points[j]});
  }
  return trace;
}

namespace {

void append(JointTrace& dst, const JointTrace& src, bool skip_first) {
  for (std::size_t i = skip_first ? 1 : 0; i < src.size(); ++i) {
    TraceEntry e = src[i];
    e.index = dst.empty() ? src.front().index : dst.back().index + 1;
    dst.push_back(e);
  }
}

}  // namespace

ProbeCycle probe_cycle(double x, double y, std::uint64_t contact_index, const CycleParams& params,
                       const TargetScene& scene, ContactNoise& noise, const RobotGeometry& geom,
                       const std::optional<Vec3>& from, std::size_t first_index) {
  ProbeCycle cycle;
  const Vec3 above(x, y, params.safe_z);
  if (from && (*from - above).norm() > 0.0) {
    // The caller's trace already ends at `from`.
    append(cycle.trace, plan_line({*from, above, tool_down_rotation(), params.step}, geom, first_index), true);
  } else {
    cycle.trace = plan_line({above, above, tool_down_rotation(), params.step}, geom, first_index);
  }

  cycle.contact = probe_contact(x, y, contact_index, scene, noise);
  const double bottom = cycle.contact.contacted() ? cycle.contact.z_measured : scene.table_z();
  if (!(bottom < params.safe_z)) {
    std::ostringstream os;
    os << "contact at z=" << bottom << " is not below the safe height " << params.safe_z;
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
  const Vec3 low(x, y, bottom);
  try {
    const JointTrace down = plan_line({above, low, tool_down_rotation(), params.step}, geom);
    const JointTrace up = plan_line({low, above, tool_down_rotation(), params.step}, geom);
    append(cycle.trace, down, true);
    append(cycle.trace, up, true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kUnreachable && e.kind() != ErrorKind::kJointLimit) throw;
    cycle.contact.kind = ContactKind::kUnreachable;
  }
  return cycle;
}

}  // namespace roboscan
