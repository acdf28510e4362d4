#pragma once

// Analytic target objects for simulated scans.

#include "roboscan/geometry.hpp"

#include <string>

namespace roboscan {

/// Closed axis-aligned box standing on z = z_bottom with its top face at z_top.
TriangleMesh make_plate(double x_lo, double x_hi, double y_lo, double y_hi, double z_top, double z_bottom = 0.0);

/// NACA 4-digit section "MPTT" (closed trailing edge), coordinates as chord fractions.
struct NacaProfile {
  double max_camber = 0.06;
  double camber_position = 0.4;
  double thickness = 0.09;

  /// Parses e.g. "6409". Throws Error(kInvalidArgument) otherwise.
  static NacaProfile from_digits(const std::string& digits);

  double camber(double x) const;
  double half_thickness(double x) const;
  /// Surfaces with the thickness added vertically to the camber line, which
  /// keeps both surfaces single-valued in x.
  double upper(double x) const { return camber(x) + half_thickness(x); }
  double lower(double x) const { return camber(x) - half_thickness(x); }
};

/// Straight wing lying on the table: chord along +x from leading_edge_x,
/// span along y centred on center_y. The section is lifted so its lowest
/// point touches z = base_z.
struct WingSpec {
  NacaProfile profile;
  double chord = 140.0;
  double span = 150.0;
  double leading_edge_x = 240.0;
  double center_y = 0.0;
  double base_z = 0.0;
  int stations = 161;  // chordwise, cosine spaced

  /// Vertical lift applied to the section.
  double lift() const;
  /// Height of the upper surface at world x inside the chord.
  double top_z(double x) const;
};

TriangleMesh make_wing(const WingSpec& spec);

}  // namespace roboscan
