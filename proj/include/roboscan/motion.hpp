#pragma once

// Straight-line Cartesian moves and the probe touch cycle. Quasi-static:
// waypoints are positions only, no timing.

#include "roboscan/kinematics.hpp"
#include "roboscan/scene.hpp"

#include <optional>
#include <vector>

namespace roboscan {

struct LinearPath {
  Vec3 start = Vec3::Zero();
  Vec3 end = Vec3::Zero();
  Mat3 orientation = tool_down_rotation();
  double step = 1.0;  // max Cartesian spacing between waypoints, mm
};

struct TraceEntry {
  std::size_t index = 0;
  JointAngles angles;
  Vec3 position = Vec3::Zero();  // commanded probe tip
};

using JointTrace = std::vector<TraceEntry>;

/// Waypoint positions of a path: start + (end - start) * j / n, j = 0..n,
/// with n the smallest count keeping the spacing <= step.
std::vector<Vec3> interpolate_line(const LinearPath& path);

/// IK at every waypoint. Throws Error(kUnreachable or kJointLimit) naming the
/// first failing waypoint. Entry indices start at `first_index`.
JointTrace plan_line(const LinearPath& path, const RobotGeometry& geom, std::size_t first_index = 0);

struct CycleParams {
  double safe_z = 50.0;
  double step = 5.0;
};

struct ProbeCycle {
  ContactResult contact;
  JointTrace trace;  // travel (if any), descent and retract
};

/// Travel at safe height from `from` (if given) to (x, y), descend along -z
/// to the contact (or to the table in skip mode on a miss), retract to safe
/// height. An IK failure during descent or retract marks the contact
/// kUnreachable and drops the vertical legs from the trace; a failure in
/// the travel leg throws.
ProbeCycle probe_cycle(double x, double y, std::uint64_t contact_index, const CycleParams& params,
                       const TargetScene& scene, ContactNoise& noise, const RobotGeometry& geom,
                       const std::optional<Vec3>& from = std::nullopt, std::size_t first_index = 0);

}  // namespace roboscan
