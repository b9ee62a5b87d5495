#include "primstab/path_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace primstab {

namespace {

double clamp0(double x) { return std::max(0.0, x); }

// Minimum of a convex function on [0, 1].
template <typename F>
double golden_min(F f, int iters = 80) {
  const double r = 0.5 * (std::sqrt(5.0) - 1);
  double lo = 0, hi = 1;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f1, f2, f(0.0), f(1.0)});
}

const Axis& vertical_axis() {
  static const Axis a{Boundary::at(0), Boundary::infinity(), Point{0, 1}};
  return a;
}

double axis_distance(const Point& p) { return std::asinh(std::abs(p.z) / p.t); }
double foot_height(const Point& p) { return std::sqrt(std::norm(p.z) + p.t * p.t); }

// Exact min of d(., (0, oo)) over the H2 segment [a, b]: on the semicircle
// x = c + R cos th, t = R sin th the ratio |x| / t is least where cos th = -R / c.
double segment_axis_distance(const Point& a, const Point& b) {
  const double ends = std::min(axis_distance(a), axis_distance(b));
  if (a.z.imag() != 0 || b.z.imag() != 0)
    return std::min(ends, golden_min([&](double s) { return axis_distance(geodesic_point(a, b, s)); }));
  const double x1 = a.z.real(), x2 = b.z.real();
  if ((x1 < 0) != (x2 < 0) && x1 != 0 && x2 != 0) return 0;
  if (x1 == x2) return ends;
  const double c = (x2 * x2 + b.t * b.t - x1 * x1 - a.t * a.t) / (2 * (x2 - x1));
  const double R = std::hypot(x1 - c, a.t);
  // Both ends on one side here; with |c| <= R the ratio is monotone along the arc.
  if (std::abs(c) <= R) return ends;
  const double th1 = std::atan2(a.t, x1 - c), th2 = std::atan2(b.t, x2 - c);
  const double th = std::acos(-R / c);
  if (th < std::min(th1, th2) || th > std::max(th1, th2)) return ends;
  return std::min(ends, std::asinh(std::sqrt(c * c - R * R) / R));
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

}  // namespace

Regime parse_regime(const std::string& s) {
  if (s == "near") return Regime::near;
  if (s == "close") return Regime::close;
  if (s == "general-far" || s == "general_far") return Regime::general_far;
  if (s == "far") return Regime::far;
  throw PreconditionError("unknown regime '" + s + "'");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::near: return "near";
    case Regime::close: return "close";
    case Regime::general_far: return "general-far";
    case Regime::far: return "far";
  }
  return "near";
}

PathBound path_lower_bound(const BoundInput& in, Regime regime) {
  if (!(in.delta > 0)) throw PreconditionError("delta must be positive");
  if (!(in.d >= 0 && in.K >= 0 && in.C >= 0 && in.Kx >= 0 && in.Ky >= 0))
    throw PreconditionError("bound inputs must be nonnegative");
  const double dl = in.delta;
  PathBound b;
  b.regime = regime;
  switch (regime) {
    case Regime::near: {
      const double cp = std::max(in.C, dl);
      b.bound = clamp0((std::exp2(in.d / (2 * dl) - cp / dl - 5) - 2) * dl);
      break;
    }
    case Regime::close:
      b.bound = clamp0((std::exp2(in.K / dl - 3) - 2) * dl);
      break;
    case Regime::general_far:
      b.bound = clamp0((std::exp2((in.d - in.Kx - in.Ky + 2 * in.K) / (2 * dl) - 5) - 2) * dl);
      break;
    case Regime::far: {
      const double g = std::exp2(in.K / dl - 3) - 2;
      b.bound = clamp0((in.d - 2 * in.K - 2 * in.C - 18 * dl) * g / 18);
      b.n = std::max<long long>(2, static_cast<long long>(std::ceil((in.d - 2 * in.K - 2 * in.C) / (18 * dl))));
      b.pair_bound = clamp0(static_cast<double>(b.n - 1) * g * dl);
      break;
    }
  }
  return b;
}

double polyline_length(const std::vector<Point>& path) {
  double L = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) L += distance(path[i], path[i + 1]);
  return L;
}

double min_distance_to_axis(const std::vector<Point>& path, const Axis& l) {
  const Mat n = normalizer(l);
  double best = axis_distance(act(n, path.front()));
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    best = std::min(best, segment_axis_distance(act(n, path[i]), act(n, path[i + 1])));
  return best;
}

double distance_to_axis_segment(const Point& p, const Axis& l, const Point& x1, const Point& y1) {
  const Mat n = normalizer(l);
  const Point q = act(n, p);
  const double h1 = foot_height(act(n, x1)), h2 = foot_height(act(n, y1));
  const double f = foot_height(q);
  if (f >= std::min(h1, h2) && f <= std::max(h1, h2)) return axis_distance(q);
  return std::min(distance(q, Point{0, h1}), distance(q, Point{0, h2}));
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
  return golden_min([&](double s) { return distance(p, geodesic_point(a, b, s)); });
}

Point h2_point(double h, double rho) { return Point{std::exp(h) * std::tanh(rho), std::exp(h) / std::cosh(rho)}; }

DetourTrial check_detour(const std::vector<Point>& path, double K, double C, double delta) {
  if (path.size() < 2) throw PreconditionError("a path needs two points");
  const Axis& l = vertical_axis();
  DetourTrial t;
  t.K = K;
  t.C = C;
  const Point &x = path.front(), &y = path.back();
  t.Kx = axis_distance(x);
  t.Ky = axis_distance(y);
  t.d = distance(x, y);
  t.length = polyline_length(path);
  t.clearance = min_distance_to_axis(path, l);
  if (t.clearance < K - 1e-9) throw PreconditionError("path enters the K-neighbourhood of the geodesic");
  if (t.Kx > K + C + 1e-9 || t.Ky > K + C + 1e-9) throw PreconditionError("endpoint farther than K + C from the geodesic");

  BoundInput in{t.d, K, C, delta, t.Kx, t.Ky};
  t.regime = t.d <= 2 * K + 6 * delta ? Regime::near : Regime::far;
  const PathBound main = path_lower_bound(in, t.regime);
  t.bound = main.bound;
  const Point x1{0, foot_height(x)}, y1{0, foot_height(y)};
  t.close_case = golden_min([&](double s) { return distance_to_axis_segment(geodesic_point(x, y, s), l, x1, y1); }) <=
                 2 * delta;
  t.general_bound = path_lower_bound(in, t.close_case ? Regime::close : Regime::general_far).bound;
  constexpr double slack = 1e-9;
  t.pass = t.length >= t.bound - slack;
  if (t.regime == Regime::far) t.pass = t.pass && t.length >= main.pair_bound - slack;
  if (t.length > 2 * delta) t.pass = t.pass && t.length >= t.general_bound - slack;
  return t;
}

DetourReport detour_verify(const DetourOptions& opt) {
  if (opt.trials < 1) throw PreconditionError("at least one trial is needed");
  if (!(opt.K_min > 0) || opt.K_max < opt.K_min || !(opt.C_max > 0)) throw PreconditionError("bad K or C range");
  DetourReport rep;
  for (int trial = 0; trial < opt.trials; ++trial) {
    auto rng = trial_rng(opt.seed, trial);
    std::uniform_real_distribution<double> U(0, 1);
    const double K = opt.K_min + (opt.K_max - opt.K_min) * U(rng);
    const double C = opt.C_max * (0.05 + 0.95 * U(rng));
    const double side = U(rng) < 0.5 ? -1 : 1;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 10000) throw InternalViolation("detour sampler failed to find an admissible path");
      // Foot separation H spans both regimes: d <= 2K + 6 delta and well beyond it.
      // The interior wanders in rho in [K + 0.2, K + 1]; a foot step of about
      // 1 / cosh(rho) keeps each chord within 0.1 of its endpoints' distance.
      const double H = (2 * K + 6 * opt.delta + 20) * U(rng);
      std::vector<Point> path{h2_point(0, side * (K + C * U(rng)))};
      double rho = K + 0.2 + 0.8 * U(rng);
      for (double h = 0;;) {
        h += (0.2 + 0.8 * U(rng)) / std::cosh(rho + 0.3);
        if (h >= H) break;
        path.push_back(h2_point(h, side * rho));
        rho = std::clamp(rho + 0.2 * (U(rng) - 0.5), K + 0.2, K + 1);
      }
      path.push_back(h2_point(H, side * (K + C * U(rng))));
      if (min_distance_to_axis(path, vertical_axis()) < K) {
        ++rep.rejected;
        continue;
      }
      DetourTrial t = check_detour(path, K, C, opt.delta);
      if (!t.pass) ++rep.violations;
      rep.trials.push_back(t);
      break;
    }
  }
  return rep;
}

QuadTrial check_quadrilateral(const Point& x, const Point& y, double delta) {
  const Axis& l = vertical_axis();
  QuadTrial q;
  q.Kx = axis_distance(x);
  q.Ky = axis_distance(y);
  const Point x1{0, foot_height(x)}, y1{0, foot_height(y)};
  q.d = distance(x, y);
  q.d1 = distance(x1, y1);
  q.near_case1 =
      golden_min([&](double s) { return distance_to_axis_segment(geodesic_point(x, y, s), l, x1, y1); }) <= 2 * delta;
  q.near_case2 = golden_min([&](double s) { return distance_to_segment(geodesic_point(x1, y1, s), x, y); }, 60) <=
                 2 * delta;
  q.thin = golden_min(
      [&](double s) {
        const Point z = geodesic_point(x, y, s);
        return std::max(distance_to_segment(z, x, x1), distance_to_segment(z, y, y1));
      },
      60);

  constexpr double slack = 1e-9;
  auto require = [&](bool ok, const char* what) {
    if (!ok) q.failures.emplace_back(what);
  };
  const double KK = q.Kx + q.Ky;
  if (q.near_case1) {
    require(q.d >= KK - 4 * delta - slack, "d >= Kx + Ky - 4 delta");
  } else {
    require(q.d <= KK + 4 * delta + slack, "d <= Kx + Ky + 4 delta");
    require(q.thin <= 2 * delta + slack, "three points within 2 delta");
  }
  if (q.near_case2)
    require(q.d1 <= q.d - KK + 12 * delta + slack, "d1 <= d - Kx - Ky + 12 delta");
  else
    require(q.d1 <= 8 * delta + slack, "d1 <= 8 delta");
  require(q.d1 <= q.d + 12 * delta + slack, "d1 <= d + 12 delta");
  if (q.d <= KK + 6 * delta) require(q.d1 <= 18 * delta + slack, "d1 <= 18 delta");
  return q;
}

QuadReport quadrilateral_check(int trials, double delta, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("at least one trial is needed");
  QuadReport rep;
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = trial_rng(seed, trial);
    std::uniform_real_distribution<double> H(-4, 4), R(-6, 6);
    const Point x = h2_point(H(rng), R(rng));
    const Point y = h2_point(H(rng), R(rng));
    QuadTrial q = check_quadrilateral(x, y, delta);
    if (!q.failures.empty()) ++rep.violations;
    rep.trials.push_back(std::move(q));
  }
  return rep;
}

}  // namespace primstab
