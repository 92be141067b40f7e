#pragma once

#include <cmath>

namespace pairsim {

// All analyzer geometry is planar: axes and scattering azimuths live in the
// plane transverse to the pair momentum and are handled in degrees.

inline double normalize_angle_deg(double a) {
  double r = std::fmod(a, 360.0);
  return r < 0.0 ? r + 360.0 : r;
}

// Separation between two axes, folded into [0, 180].
inline double axis_separation_deg(double a, double b) {
  double d = std::fabs(normalize_angle_deg(a) - normalize_angle_deg(b));
  return d > 180.0 ? 360.0 - d : d;
}

struct MeasurementAxis {
  double angle_deg = 0.0;
  MeasurementAxis() = default;
  explicit MeasurementAxis(double deg) : angle_deg(normalize_angle_deg(deg)) {}
};

// Left/right classification of a scattering azimuth against an axis:
// sign of cos(phi - axis), with the +-90 degree ties broken to +1.
// Implemented as an angle comparison so the tie rule is exact.
inline int classify_outcome(double phi_deg, double axis_deg) {
  double d = normalize_angle_deg(phi_deg - axis_deg);
  return (d <= 90.0 || d >= 270.0) ? +1 : -1;
}

inline double deg_to_rad(double d) { return d * (M_PI / 180.0); }
inline double rad_to_deg(double r) { return r * (180.0 / M_PI); }

}  // namespace pairsim
