#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <string>

#include "primstab/errors.hpp"

namespace primstab {

template <typename T>
using Mat2 = Eigen::Matrix<std::complex<T>, 2, 2>;

enum class Model { H2, H3 };

struct SpaceConfig {
  Model model = Model::H3;
  double delta = 1.0;
  double tol = 1e-9;
};

// Upper half-space point z + t j with t > 0. In H2 the imaginary part of z is 0.
template <typename T>
struct HPoint {
  std::complex<T> z;
  T t = 1;
};

// A point of C u {oo}.
template <typename T>
struct BoundaryPoint {
  bool infinite = false;
  std::complex<T> z;

  static BoundaryPoint infinity() { return {true, {}}; }
  static BoundaryPoint at(std::complex<T> w) { return {false, w}; }
  friend bool close(const BoundaryPoint& x, const BoundaryPoint& y, T tol) {
    if (x.infinite || y.infinite) return x.infinite == y.infinite;
    return std::abs(x.z - y.z) <= tol * (1 + std::abs(x.z) + std::abs(y.z));
  }
};

template <typename T>
std::complex<T> det(const Mat2<T>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <typename T>
std::complex<T> trace(const Mat2<T>& m) {
  return m(0, 0) + m(1, 1);
}

// Inverse of a unimodular matrix.
template <typename T>
Mat2<T> inverse_sl2(const Mat2<T>& m) {
  Mat2<T> r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r;
}

template <typename T>
Mat2<T> make_mat(std::complex<T> a, std::complex<T> b, std::complex<T> c, std::complex<T> d) {
  Mat2<T> m;
  m << a, b, c, d;
  return m;
}

template <typename T>
bool is_unimodular(const Mat2<T>& m, T tol = T(1e-9)) {
  return std::abs(det(m) - std::complex<T>(1)) <= tol;
}

// Divides by a square root of det when det has drifted; skipped once the
// entries are large enough that det itself is dominated by rounding.
template <typename T>
void renormalize_if_drifted(Mat2<T>& m, T tol = T(1e-9)) {
  const std::complex<T> d = det(m);
  if (std::abs(d - std::complex<T>(1)) <= tol) return;
  if (m.squaredNorm() > T(1e6)) return;
  m /= std::sqrt(d);
}

// Isometry of upper half-space, a unimodular matrix up to sign.
template <typename T>
class Isometry {
 public:
  Isometry() : m_(Mat2<T>::Identity()) {}
  explicit Isometry(const Mat2<T>& m, T tol = T(1e-9)) : m_(m) {
    if (!is_unimodular(m_, tol)) throw PreconditionError("matrix is not unimodular");
  }
  const Mat2<T>& matrix() const { return m_; }
  Isometry inverse() const { return from_trusted(inverse_sl2(m_)); }
  std::complex<T> trace() const { return primstab::trace(m_); }
  friend Isometry operator*(const Isometry& x, const Isometry& y) {
    Mat2<T> p = x.m_ * y.m_;
    renormalize_if_drifted(p);
    return from_trusted(p);
  }
  // M and -M are the same isometry.
  friend bool same_isometry(const Isometry& x, const Isometry& y, T tol) {
    return (x.m_ - y.m_).norm() <= tol || (x.m_ + y.m_).norm() <= tol;
  }

 private:
  static Isometry from_trusted(const Mat2<T>& m) {
    Isometry r;
    r.m_ = m;
    return r;
  }
  Mat2<T> m_;
};

// (a P + b)(c P + d)^-1 for the quaternion P = z + t j.
template <typename T>
HPoint<T> act(const Mat2<T>& m, const HPoint<T>& p) {
  const std::complex<T> a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const std::complex<T> den = c * p.z + d;
  const T t2 = p.t * p.t;
  const T D = std::norm(den) + std::norm(c) * t2;
  const std::complex<T> z = ((a * p.z + b) * std::conj(den) + a * std::conj(c) * t2) / D;
  return {z, p.t / D};
}

template <typename T>
BoundaryPoint<T> act(const Mat2<T>& m, const BoundaryPoint<T>& x) {
  const std::complex<T> a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  if (x.infinite) {
    if (c == std::complex<T>(0)) return BoundaryPoint<T>::infinity();
    return BoundaryPoint<T>::at(a / c);
  }
  const std::complex<T> den = c * x.z + d;
  if (den == std::complex<T>(0)) return BoundaryPoint<T>::infinity();
  return BoundaryPoint<T>::at((a * x.z + b) / den);
}

// cosh d = 1 + (|dz|^2 + dt^2) / (2 t1 t2), evaluated as 2 asinh(sqrt(.) / 2).
template <typename T>
T distance(const HPoint<T>& p, const HPoint<T>& q) {
  const T num = std::norm(p.z - q.z) + (p.t - q.t) * (p.t - q.t);
  return 2 * std::asinh(std::sqrt(num / (4 * p.t * q.t)));
}

// Isometry sending j to o.
template <typename T>
Mat2<T> frame_at(const HPoint<T>& o) {
  const T s = std::sqrt(o.t);
  return make_mat<T>(s, o.z / s, 0, 1 / s);
}

// Upper half-space to the hyperboloid model, coordinates (x0, x1, x2, x3).
template <typename T>
Eigen::Matrix<T, 4, 1> to_hyperboloid(const HPoint<T>& p) {
  const T r2 = std::norm(p.z) + p.t * p.t;
  Eigen::Matrix<T, 4, 1> x;
  x << (r2 + 1) / (2 * p.t), (r2 - 1) / (2 * p.t), p.z.real() / p.t, p.z.imag() / p.t;
  return x;
}

template <typename T>
HPoint<T> from_hyperboloid(const Eigen::Matrix<T, 4, 1>& x) {
  const T t = 1 / (x(0) - x(1));
  return {std::complex<T>(x(2) * t, x(3) * t), t};
}

// Point at fraction s of the geodesic segment from p to q.
template <typename T>
HPoint<T> geodesic_point(const HPoint<T>& p, const HPoint<T>& q, T s) {
  // Move p to j, rotate the segment onto the vertical ray above j and walk up
  // by s d. Interpolating on the hyperboloid instead cancels like e^d.
  const Mat2<T> f = frame_at(p);
  const HPoint<T> q0 = act(inverse_sl2(f), q);
  const T d = distance(HPoint<T>{0, 1}, q0);
  if (d < T(1e-6)) {
    const auto X = to_hyperboloid(HPoint<T>{0, 1}), Y = to_hyperboloid(q0);
    const Eigen::Matrix<T, 4, 1> Z = d < T(1e-300) ? X : Eigen::Matrix<T, 4, 1>(
        (std::sinh((1 - s) * d) * X + std::sinh(s * d) * Y) / std::sinh(d));
    return act(f, from_hyperboloid(Z));
  }
  // Direction of q0 in the ball model centred at j; vertical is the north pole.
  const T zz = std::norm(q0.z);
  const T vz = zz + q0.t * q0.t - 1;
  const std::complex<T> vxy = T(2) * q0.z;
  const T nxy = std::abs(vxy);
  Mat2<T> R = Mat2<T>::Identity();
  if (!(vz > 0 && nxy == 0)) {
    // Boundary endpoint by inverse stereographic projection, written without cancellation.
    const T n = std::hypot(nxy, vz);
    const std::complex<T> xi = vz > 0 ? vxy * ((n + vz) / (nxy * nxy)) : vxy / (n - vz);
    const T m = std::hypot(T(1), std::abs(xi));
    const std::complex<T> al = xi / m, be = T(1) / m;
    R = make_mat<T>(al, -std::conj(be), be, std::conj(al));
  }
  return act(Mat2<T>(f * R), HPoint<T>{0, std::exp(s * d)});
}

enum class IsometryKind { loxodromic, parabolic, elliptic };

template <typename T>
IsometryKind classify(std::complex<T> tr, T tol = T(1e-9)) {
  if (std::abs(tr.imag()) > tol) return IsometryKind::loxodromic;
  const T x = std::abs(tr.real());
  if (x > 2 + tol) return IsometryKind::loxodromic;
  if (x >= 2 - tol) return IsometryKind::parabolic;
  return IsometryKind::elliptic;
}

// Eigenvalue of largest modulus of a unimodular matrix with the given trace.
template <typename T>
std::complex<T> dominant_eigenvalue(std::complex<T> tr) {
  const std::complex<T> s = std::sqrt(tr * tr - std::complex<T>(4));
  const std::complex<T> l1 = (tr + s) / T(2), l2 = (tr - s) / T(2);
  return std::abs(l1) >= std::abs(l2) ? l1 : l2;
}

struct TranslationLength {
  double length = 0;
  IsometryKind kind = IsometryKind::loxodromic;
};

// 2 ln |lambda_max|; zero for elliptic and parabolic isometries.
template <typename T>
TranslationLength translation_length(std::complex<T> tr, T tol = T(1e-9)) {
  TranslationLength r;
  r.kind = classify(tr, tol);
  if (r.kind != IsometryKind::loxodromic) return r;
  r.length = static_cast<double>(2 * std::log(std::abs(dominant_eigenvalue(tr))));
  return r;
}

template <typename T>
TranslationLength translation_length(const Mat2<T>& m, T tol = T(1e-9)) {
  return translation_length(trace(m), tol);
}

// Oriented geodesic from `from` to `to`, with an anchor point on it for the
// signed coordinate H.
template <typename T>
struct Geodesic {
  BoundaryPoint<T> from, to;
  HPoint<T> anchor{0, 1};
};

// Unimodular N with N(from) = 0 and N(to) = oo.
template <typename T>
Mat2<T> normalizer(const BoundaryPoint<T>& from, const BoundaryPoint<T>& to) {
  if (to.infinite) return make_mat<T>(1, -from.z, 0, 1);
  if (from.infinite) return make_mat<T>(0, -1, 1, -to.z);
  const std::complex<T> s = std::sqrt(from.z - to.z);
  return make_mat<T>(T(1) / s, -from.z / s, T(1) / s, -to.z / s);
}

template <typename T>
Mat2<T> normalizer(const Geodesic<T>& g) {
  return normalizer(g.from, g.to);
}

struct GeodesicMetrics {
  double distance = 0;   // to the geodesic
  double signed_h = 0;   // position of the foot, positive towards `to`
};

template <typename T>
struct GeodesicMetricsFull {
  GeodesicMetrics m;
  HPoint<T> foot;
};

template <typename T>
GeodesicMetricsFull<T> geodesic_metrics(const HPoint<T>& p, const Geodesic<T>& g) {
  const Mat2<T> n = normalizer(g);
  const HPoint<T> q = act(n, p);
  const HPoint<T> a = act(n, g.anchor);
  const T h = std::sqrt(std::norm(q.z) + q.t * q.t);
  const T ha = std::sqrt(std::norm(a.z) + a.t * a.t);
  GeodesicMetricsFull<T> r;
  r.m.distance = static_cast<double>(std::asinh(std::abs(q.z) / q.t));
  r.m.signed_h = static_cast<double>(std::log(h / ha));
  r.foot = act(inverse_sl2(n), HPoint<T>{0, h});
  return r;
}

// Fixed point of m with multiplier lam, from whichever eigenvector equation
// is better conditioned.
template <typename T>
BoundaryPoint<T> fixed_point_for(const Mat2<T>& m, std::complex<T> lam) {
  const std::complex<T> a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const std::complex<T> da = lam - a;
  if (std::abs(da) >= std::abs(c)) {
    if (da == std::complex<T>(0)) return BoundaryPoint<T>::infinity();
    return BoundaryPoint<T>::at(b / da);
  }
  return BoundaryPoint<T>::at((lam - d) / c);
}

// Axis oriented from the repelling to the attracting fixed point.
template <typename T>
Geodesic<T> axis_of(const Mat2<T>& m, T tol = T(1e-9)) {
  const std::complex<T> tr = trace(m);
  if (classify(tr, tol) != IsometryKind::loxodromic)
    throw NotLoxodromic("isometry is not loxodromic", std::complex<double>(tr));
  const std::complex<T> big = dominant_eigenvalue(tr);
  Geodesic<T> g;
  g.to = fixed_point_for(m, big);
  g.from = fixed_point_for(m, std::complex<T>(1) / big);
  return g;
}

// Returns the same geodesic with its anchor moved to the foot of o.
template <typename T>
Geodesic<T> anchored_at(Geodesic<T> g, const HPoint<T>& o) {
  g.anchor = geodesic_metrics(o, g).foot;
  return g;
}

// Matrix times 2^scale; keeps long products from overflowing.
template <typename T>
struct ScaledMat {
  Mat2<T> m = Mat2<T>::Identity();
  int scale = 0;

  void normalize() {
    const T big = m.cwiseAbs().maxCoeff();
    if (big > T(0x1p200) || (big < T(0x1p-200) && big > 0)) {
      int e = 0;
      std::frexp(big, &e);
      m *= std::ldexp(T(1), -e);
      scale += e;
    }
  }
  friend ScaledMat operator*(const ScaledMat& x, const ScaledMat& y) {
    ScaledMat r{x.m * y.m, x.scale + y.scale};
    r.normalize();
    return r;
  }
  T log_abs_trace() const { return std::log(std::abs(primstab::trace(m))) + scale * std::log(T(2)); }
  std::complex<T> trace_value() const { return primstab::trace(m) * std::ldexp(T(1), scale); }
};

template <typename T>
ScaledMat<T> scaled_power(ScaledMat<T> base, long long n) {
  ScaledMat<T> r;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

// arcosh(exp(y)) for y >= 0 without overflow.
template <typename T>
T arcosh_exp(T y) {
  if (y < T(20)) return std::acosh(std::exp(y));
  return y + std::log1p(std::sqrt(-std::expm1(-2 * y)));
}

// d(M o, o) for a unimodular M = 2^scale * m.
template <typename T>
T orbit_distance(const ScaledMat<T>& sm, const HPoint<T>& o) {
  if (sm.scale == 0 && sm.m.cwiseAbs().maxCoeff() < T(1e8)) return distance(act(sm.m, o), o);
  const Mat2<T> f = frame_at(o);
  const Mat2<T> c = inverse_sl2(f) * sm.m * f;
  // cosh d = |c|_F^2 / 2 for det c = 1.
  const T y = 2 * std::log(c.norm()) + 2 * sm.scale * std::log(T(2)) - std::log(T(2));
  return arcosh_exp(std::max(y, T(0)));
}

template <typename T>
T orbit_distance(const Mat2<T>& m, const HPoint<T>& o) {
  return distance(act(m, o), o);
}

struct IsometryLengths {
  TranslationLength translation;
  double displacement = 0;   // d(M o, o)
  double stable = 0;         // d(M^n o, o) / n
};

template <typename T>
IsometryLengths lengths(const Mat2<T>& m, const HPoint<T>& o, long long n, T tol = T(1e-9)) {
  if (n < 1) throw PreconditionError("stable length needs n >= 1");
  IsometryLengths r;
  r.translation = translation_length(m, tol);
  r.displacement = static_cast<double>(orbit_distance(m, o));
  r.stable = static_cast<double>(orbit_distance(scaled_power(ScaledMat<T>{m, 0}, n), o) / T(n));
  return r;
}

}  // namespace primstab
