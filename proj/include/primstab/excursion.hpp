#pragma once

#include <vector>

#include "primstab/representation.hpp"

namespace primstab {

// Vertices rho(g_m) o, where g_m is the length-m prefix of gamma^span.
struct OrbitPolyline {
  Word gamma;
  int span = 1;
  std::vector<Point> vertices;
};
OrbitPolyline orbit_polyline(const Representation& rho, const Word& gamma, int span);

// The same polyline in a frame where the axis of rho(gamma) is (0, oo),
// oriented towards oo. Distances to the axis and signed feet are read off
// directly: d = asinh(|z| / t), H = log sqrt(|z|^2 + t^2) - log of the foot of o.
struct AxisFrame {
  Axis axis;                     // in the original coordinates
  Mat normalizer;
  OrbitPolyline polyline;        // vertices in normalized coordinates
  double anchor_log_height = 0;

  double distance_at_vertex(std::size_t m) const;
  double signed_h_at_vertex(std::size_t m) const;
  // Point at parameter u in [0, span |gamma|] on the geodesic interpolation.
  Point point_at(double u) const;
  double distance_at(double u) const;
};
// Throws NotLoxodromic when rho(gamma) is not loxodromic.
AxisFrame axis_frame(const Representation& rho, const Word& gamma, int span);

// Axis of rho(g_j^-1 gamma g_j), g_j the length-j prefix, anchored at the foot
// of o, for 0 <= j < |gamma|. It is the image of the axis of rho(gamma) under
// rho(g_j)^-1, so leaf quantities at vertex m = k |gamma| + j can be read off
// at o without long products. Throws NotLoxodromic.
std::vector<Axis> conjugate_axes(const Representation& rho, const Word& gamma);

// [start, end] with E(start) = E(end) = level and E >= level in between.
// Parameters are orbit positions, possibly beyond one period.
struct SubExcursion {
  double start = 0, end = 0, level = 0;
  double length() const { return end - start; }
};

// E(u) = d(tau(u), axis of rho(gamma)) sampled at u = k * step over two
// periods, with the grid step dividing 1.
struct ExcursionProfile {
  Word gamma;
  double step = 1;
  std::size_t per_period = 0;     // samples in one period
  std::vector<double> values;     // 2 * per_period + 1 samples
  double c_prime = 0;

  double period() const { return static_cast<double>(gamma.size()); }
  double min_value() const;
  double max_value() const;
  // Piecewise-linear interpolation of the samples, extended periodically.
  double at(double u) const;
  // max |E(u + period) - E(u)| over the grid.
  double periodicity_defect() const;
  // max |E(u + step) - E(u)| / step over the grid.
  double lipschitz_estimate() const;

  // The K-sub-excursion of the period excursion around the global maximum;
  // requires min <= K <= max.
  SubExcursion k_sub_excursion(double K) const;
  // A sub-excursion of the period excursion with length in [a, 2a];
  // requires 0 < a <= period.
  SubExcursion sub_excursion_between(double a) const;
};

ExcursionProfile excursion_profile(const Representation& rho, const Word& gamma, double step = 0.25);

}  // namespace primstab
