#include "roboscan/targets.hpp"

#include "roboscan/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

namespace roboscan {

TriangleMesh make_plate(double x_lo, double x_hi, double y_lo, double y_hi, double z_top, double z_bottom) {
  if (!(x_lo < x_hi && y_lo < y_hi && z_bottom < z_top))
    throw Error(ErrorKind::kInvalidArgument, "plate: empty extent");
  const Vec3 p000(x_lo, y_lo, z_bottom), p100(x_hi, y_lo, z_bottom), p110(x_hi, y_hi, z_bottom),
      p010(x_lo, y_hi, z_bottom);
  const Vec3 p001(x_lo, y_lo, z_top), p101(x_hi, y_lo, z_top), p111(x_hi, y_hi, z_top), p011(x_lo, y_hi, z_top);
  auto quad = [](TriangleMesh& m, const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    m.push_back(make_triangle(a, b, c));
    m.push_back(make_triangle(a, c, d));
  };
  TriangleMesh m;
  quad(m, p001, p101, p111, p011);  // top
  quad(m, p000, p010, p110, p100);  // bottom
  quad(m, p000, p100, p101, p001);  // y_lo
  quad(m, p010, p011, p111, p110);  // y_hi
  quad(m, p000, p001, p011, p010);  // x_lo
  quad(m, p100, p110, p111, p101);  // x_hi
  return m;
}

NacaProfile NacaProfile::from_digits(const std::string& digits) {
  if (digits.size() != 4 || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorKind::kInvalidArgument, "NACA profile: expected four digits, got '" + digits + "'");
  NacaProfile p;
  p.max_camber = (digits[0] - '0') / 100.0;
  p.camber_position = (digits[1] - '0') / 10.0;
  p.thickness = std::stoi(digits.substr(2)) / 100.0;
  if (p.thickness <= 0) throw Error(ErrorKind::kInvalidArgument, "NACA profile: zero thickness");
  if (p.max_camber > 0 && p.camber_position <= 0)
    throw Error(ErrorKind::kInvalidArgument, "NACA profile: cambered section needs a camber position");
  return p;
}

double NacaProfile::camber(double x) const {
  const double m = max_camber, p = camber_position;
  if (m == 0.0) return 0.0;
  if (x < p) return m / (p * p) * (2 * p * x - x * x);
  return m / ((1 - p) * (1 - p)) * ((1 - 2 * p) + 2 * p * x - x * x);
}

double NacaProfile::half_thickness(double x) const {
  return 5 * thickness *
         (0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x + 0.2843 * x * x * x - 0.1036 * x * x * x * x);
}

namespace {

std::vector<double> cosine_stations(int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) xs[static_cast<std::size_t>(j)] = 0.5 * (1.0 - std::cos(kPi * j / (n - 1)));
  xs.back() = 1.0;
  return xs;
}

}  // namespace

double WingSpec::lift() const {
  double lowest = 0.0;
  // Mesh stations plus a dense pass, so neither the mesh nor top_z() dips below base_z.
  for (int n : {std::max(stations, 3), 2001})
    for (double x : cosine_stations(n)) lowest = std::min(lowest, profile.lower(x));
  return -lowest * chord;
}

double WingSpec::top_z(double x) const {
  const double u = (x - leading_edge_x) / chord;
  return base_z + lift() + chord * profile.upper(u);
}

TriangleMesh make_wing(const WingSpec& spec) {
  if (!(spec.chord > 0 && spec.span > 0) || spec.stations < 3)
    throw Error(ErrorKind::kInvalidArgument, "wing: chord, span must be > 0 and stations >= 3");
  const auto xs = cosine_stations(spec.stations);
  const double lift = spec.lift();
  const double y0 = spec.center_y - spec.span / 2, y1 = spec.center_y + spec.span / 2;
  std::vector<Vec3> top, bottom;
  for (double u : xs) {
    const double x = spec.leading_edge_x + u * spec.chord;
    top.emplace_back(x, 0.0, spec.base_z + lift + spec.chord * spec.profile.upper(u));
    bottom.emplace_back(x, 0.0, spec.base_z + lift + spec.chord * spec.profile.lower(u));
  }
  auto at = [](Vec3 p, double y) {
    p.y() = y;
    return p;
  };
  TriangleMesh m;
  auto add = [&m](const Vec3& a, const Vec3& b, const Vec3& c) {
    const Triangle t = make_triangle(a, b, c);
    if (!t.normal.isZero(0.0)) m.push_back(t);
  };
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    // upper skin, facing up
    add(at(top[j], y0), at(top[j + 1], y0), at(top[j + 1], y1));
    add(at(top[j], y0), at(top[j + 1], y1), at(top[j], y1));
    // lower skin, facing down
    add(at(bottom[j], y0), at(bottom[j + 1], y1), at(bottom[j + 1], y0));
    add(at(bottom[j], y0), at(bottom[j], y1), at(bottom[j + 1], y1));
    // end caps
    add(at(bottom[j], y0), at(bottom[j + 1], y0), at(top[j + 1], y0));
    add(at(bottom[j], y0), at(top[j + 1], y0), at(top[j], y0));
    add(at(bottom[j], y1), at(top[j + 1], y1), at(bottom[j + 1], y1));
    add(at(bottom[j], y1), at(top[j], y1), at(top[j + 1], y1));
  }
  return m;
}

}  // namespace roboscan
