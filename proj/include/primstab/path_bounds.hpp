#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primstab/representation.hpp"

namespace primstab {

// Lower bounds on the length L of a path staying at distance >= K from a
// geodesic l. Negative values are clamped to 0.
enum class Regime {
  near,          // d <= 2K + 6 delta: (2^(d/2delta - C'/delta - 5) - 2) delta, C' = max(C, delta)
  close,         // some z on [x, y] within 2 delta of [x1, y1]: (2^(K/delta - 3) - 2) delta
  general_far,   // all z on [x, y] farther: (2^((d - Kx - Ky + 2K)/2delta - 5) - 2) delta
  far,           // d > 2K + 6 delta: (d - 2K - 2C - 18 delta)(2^(K/delta - 3) - 2) / 18
};
Regime parse_regime(const std::string& s);
std::string_view to_string(Regime r);

struct BoundInput {
  double d = 0, K = 0, C = 0, delta = 1, Kx = 0, Ky = 0;
};

struct PathBound {
  Regime regime = Regime::near;
  double bound = 0;
  // Far regime only: the least n >= 2 with d <= 18 n delta + 2K + 2C and
  // the matching bound (n - 1)(2^(K/delta - 3) - 2) delta.
  long long n = 0;
  double pair_bound = 0;
};

PathBound path_lower_bound(const BoundInput& in, Regime regime);

// Piecewise-geodesic paths in H2 (points with real z).
double polyline_length(const std::vector<Point>& path);
// Exact minimum of d(., l) over the path; distance to a geodesic is convex along geodesics.
double min_distance_to_axis(const std::vector<Point>& path, const Axis& l);
// d(p, [x1, y1]) for a segment of the geodesic l.
double distance_to_axis_segment(const Point& p, const Axis& l, const Point& x1, const Point& y1);
// d(p, [a, b]) for an arbitrary geodesic segment.
double distance_to_segment(const Point& p, const Point& a, const Point& b);

struct DetourOptions {
  int trials = 1000;
  double delta = 1;
  double K_min = 1, K_max = 6;
  double C_max = 2;
  std::uint64_t seed = 1;
};

struct DetourTrial {
  double K = 0, C = 0, d = 0, Kx = 0, Ky = 0, length = 0, clearance = 0;
  Regime regime = Regime::near;
  double bound = 0;
  bool close_case = false;          // some z on [x, y] within 2 delta of [x1, y1]
  double general_bound = 0;         // bound of the close / general_far case
  bool pass = true;
};

struct DetourReport {
  std::vector<DetourTrial> trials;
  std::size_t violations = 0;
  std::size_t rejected = 0;         // sampled paths discarded for clearance < K
};

// Checks a given path against the vertical axis (0, oo).
DetourTrial check_detour(const std::vector<Point>& path, double K, double C, double delta);
DetourReport detour_verify(const DetourOptions& opt);

struct QuadTrial {
  double d = 0, d1 = 0, Kx = 0, Ky = 0;
  bool near_case1 = false;          // some z on [x, y] within 2 delta of [x1, y1]
  bool near_case2 = false;          // some z on [x1, y1] within 2 delta of [x, y]
  double thin = 0;                  // min over z on [x, y] of max(d(z, [x, x1]), d(z, [y, y1]))
  std::vector<std::string> failures;
};

struct QuadReport {
  std::vector<QuadTrial> trials;
  std::size_t violations = 0;
};

// x, y against the vertical axis (0, oo) of H2.
QuadTrial check_quadrilateral(const Point& x, const Point& y, double delta);
QuadReport quadrilateral_check(int trials, double delta, std::uint64_t seed);

// Point of H2 at signed distance rho from the vertical axis with foot at height e^h.
Point h2_point(double h, double rho);

}  // namespace primstab
