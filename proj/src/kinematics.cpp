#include "roboscan/kinematics.hpp"

#include "roboscan/error.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <sstream>

namespace roboscan {

namespace {

// Planar triangle with sides `adj1`, `adj2` around the wanted angle and
// `opposite` across from it. Returns nullopt when the law-of-cosines argument
// leaves [-1, 1] by more than kCosineClamp.
//
// The angle is evaluated as atan2(sin, cos) with sin taken from the triangle
// area in Kahan's stable form. That gives the same value as
// acos((adj1^2 + adj2^2 - opposite^2) / (2 adj1 adj2)) but keeps full
// precision near the stretched and folded configurations.
std::optional<double> interior_angle(double adj1, double adj2, double opposite) {
  const double denom = 2.0 * adj1 * adj2;
  const double cosine = (adj1 * adj1 + adj2 * adj2 - opposite * opposite) / denom;
  if (!(std::abs(cosine) <= 1.0 + kCosineClamp)) return std::nullopt;

  std::array<double, 3> s{adj1, adj2, opposite};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double a = s[0], b = s[1], c = s[2];
  double prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  prod = std::max(prod, 0.0);
  const double four_area = std::sqrt(prod);  // 4 * area
  const double sine = four_area / denom;     // 2 * area / (adj1 * adj2)
  return std::atan2(sine, std::clamp(cosine, -1.0, 1.0));
}

// ZYZ angles of a wrist rotation, q5 in [0, pi]. q6 is recovered from the
// residual rotation so the product reproduces `wrist` even close to the
// singular configuration.
void wrist_angles(const Mat3& wrist, IkSolution& sol) {
  const double s5 = std::hypot(wrist(0, 2), wrist(1, 2));
  const double q5 = std::atan2(s5, wrist(2, 2));
  double q4 = 0.0;
  sol.wrist_singular = s5 < kWristSingularity;
  if (!sol.wrist_singular) q4 = std::atan2(wrist(1, 2), wrist(0, 2));
  const Mat3 residual = rot_y(-q5) * rot_z(-q4) * wrist;
  const double q6 = std::atan2(residual(1, 0), residual(0, 0));
  sol.angles[3] = q4;
  sol.angles[4] = q5;
  sol.angles[5] = q6;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kUnreachable: return "unreachable";
    case ErrorKind::kJointLimit: return "joint-limit";
    case ErrorKind::kSingular: return "singular";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

const char* to_string(IkStatus status) {
  switch (status) {
    case IkStatus::kOk: return "ok";
    case IkStatus::kUnreachable: return "unreachable";
    case IkStatus::kJointLimit: return "joint-limit";
  }
  return "unknown";
}

std::array<JointLimit, kNumJoints> RobotGeometry::default_limits() {
  std::array<JointLimit, kNumJoints> out;
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = {deg_to_rad(kDefaultLimitsDeg[j][0]), deg_to_rad(kDefaultLimitsDeg[j][1])};
  return out;
}

void RobotGeometry::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(d1) && finite(l1) && finite(l2) && finite(d4) && finite(d6)))
    throw Error(ErrorKind::kInvalidArgument, "robot geometry: non-finite link length");
  if (!(d1 > 0 && l2 > 0 && d4 > 0 && d6 > 0))
    throw Error(ErrorKind::kInvalidArgument, "robot geometry: d1, l2, d4, d6 must be > 0");
  if (!(l1 >= 0)) throw Error(ErrorKind::kInvalidArgument, "robot geometry: l1 must be >= 0");
  for (int j = 0; j < kNumJoints; ++j) {
    const auto& lim = limits[static_cast<std::size_t>(j)];
    if (!(finite(lim.lo) && finite(lim.hi) && lim.lo <= lim.hi)) {
      std::ostringstream os;
      os << "robot geometry: bad limit interval for joint " << (j + 1);
      throw Error(ErrorKind::kInvalidArgument, os.str());
    }
  }
}

bool within_limits(const JointAngles& angles, const RobotGeometry& geom, int* offending) {
  for (int j = 0; j < kNumJoints; ++j) {
    const auto& lim = geom.limits[static_cast<std::size_t>(j)];
    if (angles[j] < lim.lo - kLimitSlack || angles[j] > lim.hi + kLimitSlack) {
      if (offending) *offending = j;
      return false;
    }
  }
  return true;
}

Mat3 rot_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

Mat3 rot_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

Mat3 rot_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

Vec3 chain_wrist_origin(const JointAngles& q, const RobotGeometry& geom) {
  const Mat3 base = rot_z(q[0]);
  const Vec3 shoulder = base * Vec3(geom.l1, 0.0, geom.d1);
  const Mat3 upper = base * rot_y(q[1]);
  const Vec3 elbow = shoulder + upper * Vec3(0.0, 0.0, geom.l2);
  const Mat3 fore = upper * rot_y(q[2]);
  return elbow + fore * Vec3(0.0, 0.0, geom.d4);
}

Pose forward_kinematics(const JointAngles& q, const RobotGeometry& geom) {
  const Mat3 fore = rot_z(q[0]) * rot_y(q[1]) * rot_y(q[2]);
  Pose pose;
  pose.rotation = fore * rot_z(q[3]) * rot_y(q[4]) * rot_z(q[5]);
  pose.position = chain_wrist_origin(q, geom) + pose.rotation * Vec3(0.0, 0.0, geom.d6);
  return pose;
}

Vec3 wrist_center(const Pose& pose, const RobotGeometry& geom) {
  const Mat3& r = pose.rotation;
  return {pose.position.x() - geom.d6 * r(0, 2), pose.position.y() - geom.d6 * r(1, 2),
          pose.position.z() - geom.d6 * r(2, 2)};
}

IkSolution inverse_kinematics(const Pose& pose, const RobotGeometry& geom) {
  IkSolution sol;
  const Vec3 wc = wrist_center(pose, geom);
  sol.wrist = wc;

  const double theta1 = std::atan2(wc.y(), wc.x());
  IkTrace& tr = sol.trace;
  tr.z = wc.z() - geom.d1;
  tr.R = std::hypot(wc.x(), wc.y()) - geom.l1;
  tr.R1 = std::sqrt(tr.R * tr.R + tr.z * tr.z);
  tr.alpha = std::atan2(tr.z, tr.R);

  const auto beta = tr.R1 > 0.0 ? interior_angle(geom.l2, tr.R1, geom.d4) : std::nullopt;
  const auto elbow = interior_angle(geom.l2, geom.d4, tr.R1);
  if (!beta || !elbow) {
    sol.status = IkStatus::kUnreachable;
    std::ostringstream os;
    os << "wrist centre chord R1=" << tr.R1 << " outside [" << std::abs(geom.l2 - geom.d4) << ", "
       << (geom.l2 + geom.d4) << "]";
    sol.detail = os.str();
    return sol;
  }
  tr.beta = *beta;
  tr.elbow = *elbow;

  // Elbow-up branch: the upper arm sits beta above the chord.
  const double shoulder_elevation = tr.alpha + tr.beta;
  sol.angles[0] = theta1;
  sol.angles[1] = kPi / 2.0 - shoulder_elevation;
  sol.angles[2] = kPi - tr.elbow;

  const Mat3 fore = rot_z(sol.angles[0]) * rot_y(sol.angles[1] + sol.angles[2]);
  wrist_angles(fore.transpose() * pose.rotation, sol);

  int bad = -1;
  if (!within_limits(sol.angles, geom, &bad)) {
    sol.status = IkStatus::kJointLimit;
    sol.offending_joint = bad;
    const auto& lim = geom.limits[static_cast<std::size_t>(bad)];
    std::ostringstream os;
    os << "joint " << (bad + 1) << " = " << rad_to_deg(sol.angles[bad]) << " deg outside ["
       << rad_to_deg(lim.lo) << ", " << rad_to_deg(lim.hi) << "]";
    sol.detail = os.str();
  }
  return sol;
}

Mat3 tool_down_rotation() {
  Mat3 r;
  r << 1, 0, 0, 0, -1, 0, 0, 0, -1;
  return r;
}

Mat3 rotation_with_approach(const Vec3& approach) {
  const Vec3 a = approach.normalized();
  const Vec3 ref = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 o = a.cross(ref).normalized();
  const Vec3 n = o.cross(a);
  Mat3 r;
  r.col(0) = n;
  r.col(1) = o;
  r.col(2) = a;
  return r;
}

Reachability is_reachable(const Vec3& point, const RobotGeometry& geom) {
  Pose pose;
  pose.rotation = tool_down_rotation();
  pose.position = point;
  const IkSolution sol = inverse_kinematics(pose, geom);
  Reachability out;
  out.reachable = sol.ok();
  out.status = sol.status;
  out.diagnostic = sol.ok() ? "ok" : sol.detail;
  return out;
}

}  // namespace roboscan
