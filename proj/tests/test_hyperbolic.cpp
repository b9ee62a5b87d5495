#include <doctest.h>

#include <cmath>
#include <random>

#include "primstab/representation.hpp"

using namespace primstab;
using cd = std::complex<double>;

namespace {

Mat random_sl2c(std::mt19937_64& rng, bool real_only = false) {
  std::normal_distribution<double> N(0, 1);
  auto r = [&] { return real_only ? cd(N(rng), 0) : cd(N(rng), N(rng)); };
  for (;;) {
    Mat m = make_mat(r(), r(), r(), r());
    const cd d = det(m);
    if (std::abs(d) < 0.1) continue;
    return m / std::sqrt(d);
  }
}

Point random_point(std::mt19937_64& rng, bool real_only = false) {
  std::uniform_real_distribution<double> U(-2, 2), T(0.2, 3);
  return Point{cd(U(rng), real_only ? 0 : U(rng)), T(rng)};
}

// Length of the semicircle centred on the real axis through (x1, 1), (x2, 1),
// by Simpson's rule on ds = |dz| / t.
double semicircle_length(double x1, double x2) {
  const double c = 0.5 * (x1 + x2), R = std::hypot(x1 - c, 1.0);
  const double a = std::atan2(1.0, x2 - c), b = std::atan2(1.0, x1 - c);
  const int n = 20000;
  auto f = [&](double th) { return R / (R * std::sin(th)); };
  double s = f(a) + f(b);
  const double h = (b - a) / n;
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * f(a + k * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(Point{0, 1}, Point{0, 2}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(distance(Point{cd(0.3, 0.1), 0.7}, Point{cd(0.3, 0.1), 0.7}) == 0.0);
  const double d = distance(Point{0, 1}, Point{3, 1});
  CHECK(d == doctest::Approx(std::acosh(5.5)).epsilon(1e-14));
  CHECK(d == doctest::Approx(semicircle_length(0, 3)).epsilon(1e-9));
}

TEST_CASE("action examples") {
  const Point p{cd(0.4, -0.2), 1.3};
  const Point q = act(Mat(Mat::Identity()), p);
  CHECK(std::abs(q.z - p.z) < 1e-15);
  CHECK(q.t == p.t);
  const double r2 = std::sqrt(2.0);
  Point s = act(make_mat<double>(r2, 0, 0, 1 / r2), Point{0, 1});
  CHECK(std::abs(s.z) < 1e-15);
  CHECK(s.t == doctest::Approx(2.0));
  s = act(make_mat<double>(1, 1, 0, 1), Point{0, 1});
  CHECK(std::abs(s.z - cd(1, 0)) < 1e-15);
  CHECK(s.t == doctest::Approx(1.0));
}

TEST_CASE("action is an isometric left action") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const bool h2 = trial % 2 == 0;
    const Mat M = random_sl2c(rng, h2), N = random_sl2c(rng, h2);
    const Point p = random_point(rng, h2), q = random_point(rng, h2);
    const double d = distance(p, q);
    CHECK(distance(act(M, p), act(M, q)) == doctest::Approx(d).epsilon(1e-8));
    const Point a = act(Mat(M * N), p), b = act(M, act(N, p));
    CHECK(distance(a, b) < 1e-7);
    CHECK(distance(act(Mat(-M), p), act(M, p)) < 1e-12);
    if (h2) CHECK(std::abs(act(M, p).z.imag()) < 1e-12);
  }
}

TEST_CASE("boundary action and fixed points") {
  const Mat M = make_mat<double>(1, 1, 1, 2);
  const Axis g = axis_of(M);
  const double s5 = std::sqrt(5.0);
  REQUIRE_FALSE(g.to.infinite);
  REQUIRE_FALSE(g.from.infinite);
  CHECK(g.to.z.real() == doctest::Approx((s5 - 1) / 2));
  CHECK(g.from.z.real() == doctest::Approx((-s5 - 1) / 2));
  CHECK(close(act(M, g.to), g.to, 1e-12));
  CHECK(close(act(M, g.from), g.from, 1e-12));
  const Axis d = axis_of(make_mat<double>(2, 0, 0, 0.5));
  CHECK(d.to.infinite);
  CHECK(std::abs(d.from.z) < 1e-15);
  const Axis e = axis_of(make_mat<double>(0.5, 0, 0, 2));
  CHECK(e.from.infinite);
  CHECK(std::abs(e.to.z) < 1e-15);
  CHECK_THROWS_AS(axis_of(make_mat<double>(1, 1, 0, 1)), NotLoxodromic);
  try {
    axis_of(make_mat<double>(0, -1, 1, 0));
  } catch (const NotLoxodromic& ex) {
    CHECK(std::abs(ex.trace) < 1e-15);
  }
}

TEST_CASE("axes of random loxodromics are attracting") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Mat M = random_sl2c(rng);
    if (classify(trace(M)) != IsometryKind::loxodromic) continue;
    const Axis g = axis_of(M);
    CHECK(close(act(M, g.to), g.to, 1e-7));
    CHECK(close(act(M, g.from), g.from, 1e-7));
    // Forward iterates of a generic point approach `to`.
    const Mat N = normalizer(g);
    Point p = act(N, Point{cd(0.1, 0.2), 1});
    const Point q = act(N, act(M, act(inverse_sl2(N), p)));
    CHECK(std::norm(q.z) + q.t * q.t > std::norm(p.z) + p.t * p.t);
  }
}

TEST_CASE("classification and translation length") {
  CHECK(classify(cd(3, 0)) == IsometryKind::loxodromic);
  CHECK(classify(cd(-2, 0)) == IsometryKind::parabolic);
  CHECK(classify(cd(1, 0)) == IsometryKind::elliptic);
  CHECK(classify(cd(0, 0.5)) == IsometryKind::loxodromic);
  CHECK(translation_length(cd(0, 0)).length == 0);
  const Mat A = make_mat<double>(1, 1, 1, 2);
  const double tl = translation_length(A).length;
  CHECK(tl == doctest::Approx(2 * std::log((3 + std::sqrt(5.0)) / 2)).epsilon(1e-14));
  CHECK(tl == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-14));
  CHECK(tl == doctest::Approx(1.92485).epsilon(1e-5));
}

TEST_CASE("three lengths of an isometry") {
  IsometryLengths L = lengths(make_mat<double>(2, 0, 0, 0.5), Point{0, 1}, 7);
  CHECK(L.translation.length == doctest::Approx(2 * std::log(2.0)));
  CHECK(L.displacement == doctest::Approx(2 * std::log(2.0)));
  CHECK(L.stable == doctest::Approx(2 * std::log(2.0)));
  L = lengths(Mat(Mat::Identity()), Point{0, 1}, 5);
  CHECK(L.translation.length == 0);
  CHECK(L.displacement == 0);
  CHECK(L.stable == 0);
  L = lengths(make_mat<double>(1, 1, 1, 2), Point{0, 1}, 10000);
  CHECK(std::abs(L.stable - 2 * std::acosh(1.5)) <= 1e-3);
  CHECK_THROWS_AS(lengths(make_mat<double>(1, 1, 1, 2), Point{0, 1}, 0), PreconditionError);
}

TEST_CASE("translation length is a conjugacy invariant bounded by displacement") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const Mat M = random_sl2c(rng), P = random_sl2c(rng);
    const double tl = translation_length(M).length;
    CHECK(translation_length(Mat(P * M * inverse_sl2(P))).length == doctest::Approx(tl).epsilon(1e-7));
    const Point o = random_point(rng);
    CHECK(tl <= orbit_distance(M, o) + 1e-9);
  }
}

TEST_CASE("scaled powers match direct powers and survive overflow") {
  const Mat A = make_mat<double>(1, 1, 1, 2);
  Mat direct = Mat::Identity();
  for (int n = 1; n <= 20; ++n) {
    direct = direct * A;
    const Scaled s = scaled_power(Scaled{A, 0}, n);
    CHECK(std::abs(s.trace_value() - trace(direct)) <= 1e-9 * std::abs(trace(direct)));
    CHECK(orbit_distance(s, Point{0, 1}) == doctest::Approx(orbit_distance(direct, Point{0, 1})).epsilon(1e-10));
  }
  const Scaled big = scaled_power(Scaled{A, 0}, 10000);
  CHECK(big.scale > 0);
  const double lam = std::log((3 + std::sqrt(5.0)) / 2);
  CHECK(big.log_abs_trace() == doctest::Approx(10000 * lam).epsilon(1e-10));
  const double d = orbit_distance(big, Point{0, 1});
  CHECK(std::isfinite(d));
  CHECK(std::abs(d / 10000 - 2 * lam) <= 5.0 / 10000);
}

TEST_CASE("orbit distance in the log domain agrees with direct evaluation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat M = random_sl2c(rng);
    const Point o = random_point(rng);
    const Scaled s{M * 0.25, 2};
    CHECK(orbit_distance(s, o) == doctest::Approx(distance(act(M, o), o)).epsilon(1e-8));
  }
}

TEST_CASE("distance to a geodesic") {
  const Axis v{Boundary::at(0), Boundary::infinity(), Point{0, 1}};
  GeodesicMetricsFull<double> r = geodesic_metrics(Point{1, 1}, v);
  CHECK(r.m.distance == doctest::Approx(std::log(1 + std::sqrt(2.0))).epsilon(1e-14));
  double best = 1e9;
  for (int k = -4000; k <= 4000; ++k) best = std::min(best, distance(Point{1, 1}, Point{0, std::exp(k * 1e-3)}));
  CHECK(r.m.distance == doctest::Approx(best).epsilon(1e-6));
  r = geodesic_metrics(Point{0, std::exp(1.0)}, v);
  CHECK(r.m.distance == doctest::Approx(0.0));
  CHECK(r.m.signed_h == doctest::Approx(1.0));
  // Invariance under an isometry moving the geodesic.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat M = random_sl2c(rng);
    const Point p = random_point(rng);
    const Axis w{act(M, v.from), act(M, v.to), act(M, v.anchor)};
    const GeodesicMetrics a = geodesic_metrics(p, v).m;
    const GeodesicMetrics b = geodesic_metrics(act(M, p), w).m;
    CHECK(b.distance == doctest::Approx(a.distance).epsilon(1e-7));
    CHECK(b.signed_h == doctest::Approx(a.signed_h).epsilon(1e-7));
  }
}

TEST_CASE("geodesic interpolation and frames") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p = random_point(rng), q = random_point(rng);
    const double d = distance(p, q);
    for (double s : {0.0, 0.25, 0.5, 1.0}) {
      const Point z = geodesic_point(p, q, s);
      CHECK(distance(p, z) == doctest::Approx(s * d).epsilon(1e-7).scale(1));
      CHECK(distance(z, q) == doctest::Approx((1 - s) * d).epsilon(1e-7).scale(1));
    }
    const Point f = act(frame_at(p), Point{0, 1});
    CHECK(distance(f, p) < 1e-9);
    const Point back = from_hyperboloid(to_hyperboloid(p));
    CHECK(distance(back, p) < 1e-9);
  }
}

TEST_CASE("geodesic interpolation on long segments") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> H(-25, 25), R(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    // Points far apart along and away from the vertical axis, in H2 and H3.
    const double h1 = H(rng), h2 = H(rng);
    Point p{std::exp(h1) * std::sinh(R(rng)), std::exp(h1)}, q{std::exp(h2) * std::sinh(R(rng)), std::exp(h2)};
    if (trial % 2) q.z *= std::polar(1.0, 1.0);
    const double d = distance(p, q);
    // Each end is measured from its own side: a point within a few units of q
    // near the boundary cannot be stored with its offset from p resolved.
    for (double s : {0.1, 0.5, 0.9}) {
      const Point z = geodesic_point(p, q, s), w = geodesic_point(q, p, 1 - s);
      CHECK(distance(p, z) == doctest::Approx(s * d).epsilon(1e-8).scale(1));
      CHECK(distance(w, q) == doctest::Approx((1 - s) * d).epsilon(1e-8).scale(1));
      if (trial % 2 == 0) CHECK(z.z.imag() == 0);
    }
    // Where both are representable, the two constructions meet.
    if (d < 20) CHECK(distance(geodesic_point(p, q, 0.5), geodesic_point(q, p, 0.5)) < 1e-6);
  }
}

TEST_CASE("isometry wrapper") {
  CHECK_THROWS_AS(Isometry<double>(make_mat<double>(2, 0, 0, 1)), PreconditionError);
  const Isometry<double> A(make_mat<double>(1, 1, 1, 2));
  CHECK(same_isometry(A * A.inverse(), Isometry<double>(), 1e-12));
  CHECK(same_isometry(Isometry<double>(make_mat<double>(-1, -1, -1, -2)), A, 1e-12));
  CHECK(is_unimodular(Mat(A.matrix())));
}
