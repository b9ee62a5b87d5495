#include <doctest.h>

#include <cmath>
#include <random>

#include "primstab/path_bounds.hpp"

using namespace primstab;

TEST_CASE("bound formulas") {
  CHECK(path_lower_bound(BoundInput{40, 0, 1, 1}, Regime::near).bound == 16382);
  CHECK(path_lower_bound(BoundInput{0, 3, 0, 1}, Regime::close).bound == 0);
  CHECK(path_lower_bound(BoundInput{0, 5, 0, 1}, Regime::close).bound == 2);
  CHECK(path_lower_bound(BoundInput{40, 0, 0, 1, 0, 0}, Regime::general_far).bound == 32766);

  const PathBound far = path_lower_bound(BoundInput{100, 10, 1, 1}, Regime::far);
  CHECK(far.bound == doctest::Approx(420.0).epsilon(1e-12));
  // Least n >= 2 with 100 <= 18 n + 22.
  CHECK(far.n == 5);
  CHECK(far.pair_bound == doctest::Approx(4 * 126.0));

  // C' = max(C, delta): a smaller C gives the same near bound as C = delta.
  CHECK(path_lower_bound(BoundInput{40, 0, 0.2, 1}, Regime::near).bound == 16382);
  // Scaling d, K, C and delta together scales the bound.
  CHECK(path_lower_bound(BoundInput{80, 0, 2, 2}, Regime::near).bound == 2 * 16382);
  CHECK(path_lower_bound(BoundInput{0, 0, 0, 1}, Regime::near).bound == 0);
}

TEST_CASE("regime names") {
  for (Regime r : {Regime::near, Regime::close, Regime::general_far, Regime::far}) CHECK(parse_regime(std::string(to_string(r))) == r);
  CHECK_THROWS_AS(parse_regime("middle"), PreconditionError);
  CHECK_THROWS_AS(path_lower_bound(BoundInput{1, 1, 1, 0}, Regime::near), PreconditionError);
  CHECK_THROWS_AS(path_lower_bound(BoundInput{-1, 1, 1, 1}, Regime::near), PreconditionError);
}

TEST_CASE("detour along an equidistant curve") {
  // Points at distance rho from the vertical axis lie on a Euclidean ray; the
  // arc between foot heights 1 and e^H has length cosh(rho) H.
  const double rho = 2.001, H = 20;
  std::vector<Point> path;
  const int n = 4000;
  for (int k = 0; k <= n; ++k) path.push_back(h2_point(H * k / n, rho));
  const DetourTrial t = check_detour(path, 2, 0.01, 1);
  const double chord = std::acosh(std::cosh(rho) * std::cosh(rho) * std::cosh(H / n) - std::sinh(rho) * std::sinh(rho));
  CHECK(t.length == doctest::Approx(n * chord).epsilon(1e-9));
  // Chords fall short of the curved arc by O(n step^3).
  CHECK(t.length == doctest::Approx(std::cosh(rho) * H).epsilon(1e-4));
  CHECK(t.clearance >= 2);
  CHECK(t.Kx == doctest::Approx(rho));
  const double d = std::acosh(std::cosh(rho) * std::cosh(rho) * std::cosh(H) - std::sinh(rho) * std::sinh(rho));
  CHECK(t.d == doctest::Approx(d).epsilon(1e-9));
  CHECK(t.regime == Regime::far);
  CHECK(t.length >= t.bound);
  CHECK(t.pass);

  // A path dipping into the neighbourhood is rejected.
  CHECK_THROWS_AS(check_detour({h2_point(0, 2.5), h2_point(1, 0.5), h2_point(2, 2.5)}, 2, 1, 1), PreconditionError);
}

TEST_CASE("exact clearance of a segment against dense sampling") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> H(-8, 8), R(-4, 4);
  const Axis l{Boundary::at(0), Boundary::infinity(), Point{0, 1}};
  for (int trial = 0; trial < 300; ++trial) {
    const Point a = h2_point(H(rng), R(rng)), b = h2_point(H(rng), R(rng));
    double sampled = 1e300;
    for (int k = 0; k <= 4000; ++k) {
      const Point z = geodesic_point(a, b, k / 4000.0);
      sampled = std::min(sampled, std::asinh(std::abs(z.z) / z.t));
    }
    const double exact = min_distance_to_axis({a, b}, l);
    CHECK(exact <= sampled + 1e-9);
    // The grid misses the true minimum by at most half a grid step.
    CHECK(exact >= sampled - distance(a, b) / 8000 - 1e-12);
  }
}

TEST_CASE("degenerate detour") {
  const Point x = h2_point(0, 2);
  const DetourTrial t = check_detour({x, x}, 2, 0, 1);
  CHECK(t.d == 0);
  CHECK(t.length == 0);
  CHECK(t.bound <= 0);
  CHECK(t.pass);
}

TEST_CASE("quadrilateral with both points on the geodesic") {
  const QuadTrial q = check_quadrilateral(h2_point(0, 0), h2_point(5, 0), 1);
  CHECK(q.d1 == doctest::Approx(q.d));
  CHECK(q.d == doctest::Approx(5.0));
  CHECK(q.near_case1);
  CHECK(q.failures.empty());
}

TEST_CASE("quadrilateral with points at equal height on opposite sides") {
  const Point x = h2_point(0, 3);
  const Point y{-x.z, x.t};
  const QuadTrial q = check_quadrilateral(x, y, 1);
  CHECK(q.Kx == doctest::Approx(3.0));
  CHECK(q.Ky == doctest::Approx(3.0));
  CHECK(q.d1 == doctest::Approx(0.0).scale(1));
  CHECK(q.near_case1);
  CHECK(q.d >= q.Kx + q.Ky - 4);
  CHECK(q.failures.empty());
}

TEST_CASE("small Monte Carlo runs") {
  const DetourReport d = detour_verify(DetourOptions{150, 1, 1, 5, 2, 3});
  CHECK(d.trials.size() == 150);
  CHECK(d.violations == 0);
  const QuadReport q = quadrilateral_check(150, 1, 3);
  CHECK(q.trials.size() == 150);
  CHECK(q.violations == 0);
  CHECK_THROWS_AS(detour_verify(DetourOptions{0}), PreconditionError);
}
