#pragma once

// Closed-form kinematics of a 6-DoF arm with a spherical wrist.
//
// Link chain (all lengths in mm, angles in radians):
//
//   T = Rz(q1) * Tz(d1) * Tx(l1) * Ry(q2) * Tz(l2) * Ry(q3) * Tz(d4)
//         * Rz(q4) * Ry(q5) * Rz(q6) * Tz(d6)
//
// Joint 1 turns about the vertical base axis. Joints 2 and 3 pitch the upper
// arm and forearm inside the vertical plane selected by q1. Joints 4-6 form a
// ZYZ spherical wrist centred at the end of the forearm, and the probe tip sits
// d6 along the wrist approach axis. With every joint at zero the arm points
// straight up and the probe points up.
//
// Relation to the planar triangle used by the position solver:
//   shoulder elevation above horizontal  theta2g = pi/2 - q2
//   interior elbow angle                 theta3g = pi   - q3
// so q3 in [0, pi] is the elbow-up family.

#include "roboscan/geometry.hpp"

#include <array>
#include <optional>
#include <string>

namespace roboscan {

inline constexpr int kNumJoints = 6;

struct Pose {
  Mat3 rotation = Mat3::Identity();  // columns n, o, a
  Vec3 position = Vec3::Zero();

  Vec3 approach() const { return rotation.col(2); }
};

struct JointAngles {
  std::array<double, kNumJoints> q{};

  double& operator[](int i) { return q[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return q[static_cast<std::size_t>(i)]; }
};

/// Default joint ranges in degrees: the elbow-up family with the wrist centre
/// kept in front of the base axis for the default link lengths.
inline constexpr std::array<std::array<double, 2>, kNumJoints> kDefaultLimitsDeg{
    {{-170, 170}, {-5, 135}, {0, 170}, {-180, 180}, {-150, 150}, {-180, 180}}};

struct JointLimit {
  double lo = -kPi;
  double hi = kPi;
};

struct RobotGeometry {
  double d1 = 170.0;  // base height
  double l1 = 65.0;   // shoulder radial offset
  double l2 = 305.0;  // upper arm
  double d4 = 222.0;  // elbow to wrist centre
  double d6 = 70.0;   // wrist centre to probe tip
  std::array<JointLimit, kNumJoints> limits = default_limits();

  static std::array<JointLimit, kNumJoints> default_limits();

  double max_reach() const { return l1 + l2 + d4 + d6; }

  /// Throws Error(kInvalidArgument) on a non-physical geometry.
  void validate() const;
};

/// Angle slack when comparing a solved joint against its limits.
inline constexpr double kLimitSlack = 1e-9;
/// Law-of-cosines arguments within this distance of +-1 are clamped.
inline constexpr double kCosineClamp = 1e-12;
/// Below this |sin q5| the wrist is treated as singular.
inline constexpr double kWristSingularity = 1e-12;

bool within_limits(const JointAngles& angles, const RobotGeometry& geom, int* offending = nullptr);

Pose forward_kinematics(const JointAngles& angles, const RobotGeometry& geom);

/// Origin of the wrist frame (end of the forearm) from the joint chain.
Vec3 chain_wrist_origin(const JointAngles& angles, const RobotGeometry& geom);

/// Wrist centre implied by a probe pose: p - d6 * a.
Vec3 wrist_center(const Pose& pose, const RobotGeometry& geom);

struct IkTrace {
  double z = 0.0;      // wrist centre elevation above the shoulder
  double R = 0.0;      // radial distance from the shoulder
  double R1 = 0.0;     // shoulder-to-wrist chord
  double alpha = 0.0;  // chord elevation
  double beta = 0.0;   // angle between chord and upper arm
  double elbow = 0.0;  // interior elbow angle
};

enum class IkStatus { kOk, kUnreachable, kJointLimit };

const char* to_string(IkStatus status);

struct IkSolution {
  IkStatus status = IkStatus::kOk;
  JointAngles angles;
  IkTrace trace;
  Vec3 wrist;
  bool wrist_singular = false;  // q4 pinned to zero
  int offending_joint = -1;     // set for kJointLimit
  std::string detail;

  bool ok() const { return status == IkStatus::kOk; }
};

/// Elbow-up, no-flip closed-form solution. Never throws; check status.
IkSolution inverse_kinematics(const Pose& pose, const RobotGeometry& geom);

/// Rotation with the approach axis pointing straight down.
Mat3 tool_down_rotation();

/// Orthonormal frame whose third column is `approach` (need not be unit).
Mat3 rotation_with_approach(const Vec3& approach);

struct Reachability {
  bool reachable = false;
  IkStatus status = IkStatus::kUnreachable;
  std::string diagnostic;
};

/// True iff a tool-down probe pose at `point` has an in-limit elbow-up solution.
Reachability is_reachable(const Vec3& point, const RobotGeometry& geom);

Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

}  // namespace roboscan
