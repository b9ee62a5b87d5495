#include "primstab/excursion.hpp"

#include <algorithm>
#include <cmath>

namespace primstab {

OrbitPolyline orbit_polyline(const Representation& rho, const Word& gamma, int span) {
  if (span < 1) throw PreconditionError("span must be at least 1");
  if (gamma.empty()) throw PreconditionError("orbit polyline of the empty word");
  OrbitPolyline pl{gamma, span, {}};
  pl.vertices.reserve(gamma.size() * static_cast<std::size_t>(span) + 1);
  Mat g = Mat::Identity();
  pl.vertices.push_back(rho.o);
  for (int s = 0; s < span; ++s) {
    for (Letter x : gamma.letters()) {
      g = g * letter_matrix(rho, x);
      pl.vertices.push_back(act(g, rho.o));
    }
  }
  return pl;
}

double AxisFrame::distance_at_vertex(std::size_t m) const {
  const Point& p = polyline.vertices[m];
  return std::asinh(std::abs(p.z) / p.t);
}

double AxisFrame::signed_h_at_vertex(std::size_t m) const {
  const Point& p = polyline.vertices[m];
  return 0.5 * std::log(std::norm(p.z) + p.t * p.t) - anchor_log_height;
}

Point AxisFrame::point_at(double u) const {
  const std::size_t last = polyline.vertices.size() - 1;
  if (u <= 0) return polyline.vertices.front();
  if (u >= static_cast<double>(last)) return polyline.vertices.back();
  const auto m = static_cast<std::size_t>(std::floor(u));
  const double s = u - static_cast<double>(m);
  if (s == 0) return polyline.vertices[m];
  return geodesic_point(polyline.vertices[m], polyline.vertices[m + 1], s);
}

double AxisFrame::distance_at(double u) const {
  const Point p = point_at(u);
  return std::asinh(std::abs(p.z) / p.t);
}

AxisFrame axis_frame(const Representation& rho, const Word& gamma, int span) {
  if (gamma.empty()) throw PreconditionError("axis of the empty word");
  AxisFrame f;
  const Scaled g = word_matrix(rho, gamma);
  f.axis = anchored_at(axis_of(g.m, rho.config.tol), rho.o);
  f.normalizer = normalizer(f.axis);
  Representation conj = rho;
  conj.A = f.normalizer * rho.A * inverse_sl2(f.normalizer);
  conj.B = f.normalizer * rho.B * inverse_sl2(f.normalizer);
  conj.o = act(f.normalizer, rho.o);
  f.polyline = orbit_polyline(conj, gamma, span);
  const Point a = act(f.normalizer, f.axis.anchor);
  f.anchor_log_height = 0.5 * std::log(std::norm(a.z) + a.t * a.t);
  return f;
}

std::vector<Axis> conjugate_axes(const Representation& rho, const Word& gamma) {
  if (gamma.empty()) throw PreconditionError("axis of the empty word");
  std::vector<Axis> axes;
  axes.reserve(gamma.size());
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    const Word g = subword(gamma, 0, j);
    const Scaled c = word_matrix(rho, invert(g) * gamma * g);
    axes.push_back(anchored_at(axis_of(c.m, rho.config.tol), rho.o));
  }
  return axes;
}

// g_m^-1 maps the leaf segment [g_m o, g_(m+1) o] to [o, x o] and the axis of
// gamma to the j-th conjugate axis, j = m mod |gamma|, which keeps every sample
// well conditioned; forward products lose the small entries entirely.
ExcursionProfile excursion_profile(const Representation& rho, const Word& gamma, double step) {
  if (!(step > 0) || step > 1) throw PreconditionError("grid step must lie in (0, 1]");
  if (gamma.empty()) throw PreconditionError("excursion of the empty word");
  const auto per_unit = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-12));
  const std::size_t n = gamma.size();
  const std::vector<Axis> axes = conjugate_axes(rho, gamma);
ExcursionProfile e;
  e.gamma = gamma;
  e.step = 1.0 / static_cast<double>(per_unit);
  e.per_period = per_unit * n;
  e.c_prime = rho.c_prime();
  e.values.resize(2 * e.per_period + 1);
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    const std::size_t m = k / per_unit, r = k % per_unit, j = m % n;
    Point p = rho.o;
    if (r != 0) {
      const Point q = act(letter_matrix(rho, gamma[j]), rho.o);
      p = geodesic_point(rho.o, q, static_cast<double>(r) * e.step);
    }
    e.values[k] = geodesic_metrics(p, axes[j]).m.distance;
  }
  return e;
}

double ExcursionProfile::min_value() const {
  return *std::min_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(per_period));
}

double ExcursionProfile::max_value() const {
  return *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(per_period));
}

double ExcursionProfile::at(double u) const {
  const double P = period();
  u = std::fmod(u, P);
  if (u < 0) u += P;
  const double x = u / step;
  const auto k = static_cast<std::size_t>(std::floor(x));
  const double s = x - static_cast<double>(k);
  return (1 - s) * values[k] + s * values[k + 1];
}

double ExcursionProfile::periodicity_defect() const {
  double worst = 0;
  for (std::size_t k = 0; k <= per_period; ++k) worst = std::max(worst, std::abs(values[k + per_period] - values[k]));
  return worst;
}

double ExcursionProfile::lipschitz_estimate() const {
  double worst = 0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) worst = std::max(worst, std::abs(values[k + 1] - values[k]) / step);
  return worst;
}

namespace {

// One period read from its minimum: f(0) = f(P) = min.
struct PeriodView {
  const ExcursionProfile& e;
  std::size_t shift;
  double f(std::size_t i) const { return e.values[(shift + i) % e.per_period]; }
  double u(double x) const { return (static_cast<double>(shift) + x) * e.step; }
};

PeriodView period_view(const ExcursionProfile& e) {
  auto it = std::min_element(e.values.begin(), e.values.begin() + static_cast<std::ptrdiff_t>(e.per_period));
  return {e, static_cast<std::size_t>(it - e.values.begin())};
}

// Crossing of level h on the cell [i, i + 1].
double crossing(double fi, double fj, double h, std::size_t i) {
  if (fj == fi) return static_cast<double>(i);
  return static_cast<double>(i) + (h - fi) / (fj - fi);
}

}  // namespace

SubExcursion ExcursionProfile::k_sub_excursion(double K) const {
  const double lo = min_value(), hi = max_value();
  if (K < lo - 1e-12 || K > hi + 1e-12) throw PreconditionError("level outside [min E, max E]");
  const PeriodView v = period_view(*this);
  const std::size_t P = per_period;
  std::size_t c = 0;
  for (std::size_t i = 0; i <= P; ++i)
    if (v.f(i) > v.f(c)) c = i;
  std::size_t i = c;
  while (i > 0 && v.f(i) > K) --i;
  const double x = v.f(i) >= K ? static_cast<double>(i) : crossing(v.f(i), v.f(i + 1), K, i);
  std::size_t j = c;
  while (j < P && v.f(j) > K) ++j;
  const double y = v.f(j) >= K ? static_cast<double>(j) : crossing(v.f(j - 1), v.f(j), K, j - 1);
  return {v.u(x), v.u(y), K};
}

SubExcursion ExcursionProfile::sub_excursion_between(double a) const {
  const double P = period();
  if (!(a > 0) || a > P + 1e-12) throw PreconditionError("target length outside (0, period]");
  const PeriodView v = period_view(*this);
  const std::size_t n = per_period;
  if (P <= 2 * a) return {v.u(0), v.u(static_cast<double>(n)), v.f(0)};

  std::vector<double> levels;
  for (std::size_t i = 0; i <= n; ++i) levels.push_back(v.f(i));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const double a_cells = a / step;

  for (std::size_t s = 0; s + 1 < levels.size(); ++s) {
    const double h0 = levels[s], h1 = levels[s + 1], hm = 0.5 * (h0 + h1);
    // Components of {f > hm}; f(0) = f(n) = min < hm, so none touches the ends.
    std::size_t i = 1;
    while (i < n) {
      if (v.f(i) <= hm) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && v.f(j + 1) > hm) ++j;
      auto left = [&](double h) { return crossing(v.f(i - 1), v.f(i), h, i - 1); };
      auto right = [&](double h) { return crossing(v.f(j), v.f(j + 1), h, j); };
      const double L0 = right(h0) - left(h0), L1 = right(h1) - left(h1);
      const double target = std::max(a_cells, L1);
      if (target <= std::min(2 * a_cells, L0)) {
        const double h = L0 == L1 ? h0 : h0 + (L0 - target) / (L0 - L1) * (h1 - h0);
        return {v.u(left(h)), v.u(right(h)), h};
      }
      i = j + 1;
    }
  }
  throw InternalViolation("no sub-excursion with length in [a, 2a]");
}

}  // namespace primstab
