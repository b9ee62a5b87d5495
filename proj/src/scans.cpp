#include "primstab/scans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "primstab/excursion.hpp"

namespace primstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ClassRecord class_record(const Representation& rho, const BlockTower& t, double low_ratio) {
  ClassRecord r;
  r.slope = t.slope;
  r.length = t.top().size();
  const Scaled m = class_matrix(rho, t);
  r.trace = m.trace_value();
  const IsometryKind kind = classify(r.trace, rho.config.tol);
  if (kind == IsometryKind::loxodromic) {
    // Once entries were rescaled the trace is huge and |lambda| = |tr| to double precision.
    r.translation = m.scale == 0 ? translation_length(r.trace, rho.config.tol).length : 2 * m.log_abs_trace();
  }
  if (kind == IsometryKind::elliptic) r.flags.push_back("elliptic");
  if (kind == IsometryKind::parabolic) r.flags.push_back("parabolic");
  r.ratio = r.translation / static_cast<double>(r.length);
  if (r.ratio < low_ratio) r.flags.push_back("low-ratio");
  r.violation = kind != IsometryKind::loxodromic;
  return r;
}

}  // namespace

std::map<std::pair<long long, long long>, std::complex<double>> fricke_traces(
    std::complex<double> x, std::complex<double> y, std::complex<double> z, int cap) {
  std::map<std::pair<long long, long long>, std::complex<double>> out;
  out[{1, 0}] = x;
  out[{0, 1}] = y;
  out[{1, 1}] = z;
  struct Node {
    long long lp, lq, rp, rq;
    std::complex<double> tl, tr, tm;
  };
  std::vector<Node> stack{{0, 1, 1, 0, y, x, z}};
  while (!stack.empty()) {
    const Node nd = stack.back();
    stack.pop_back();
    const long long mp = nd.lp + nd.rp, mq = nd.lq + nd.rq;
    // Children (L, M) and (M, R); their mediants grow in both coordinates.
    const long long ap = nd.lp + mp, aq = nd.lq + mq;
    if (ap <= cap && aq <= cap) {
      const std::complex<double> t = nd.tl * nd.tm - nd.tr;
      out[{ap, aq}] = t;
      stack.push_back({nd.lp, nd.lq, mp, mq, nd.tl, nd.tm, t});
    }
    const long long bp = mp + nd.rp, bq = mq + nd.rq;
    if (bp <= cap && bq <= cap) {
      const std::complex<double> t = nd.tm * nd.tr - nd.tl;
      out[{bp, bq}] = t;
      stack.push_back({mp, mq, nd.rp, nd.rq, nd.tm, nd.tr, t});
    }
  }
  return out;
}

BowditchReport bowditch_scan(const Representation& rho, const BowditchOptions& opt) {
  BowditchReport rep;
  BowditchAggregate& ag = rep.aggregate;
  ag.min_ratio = kInf;
  ag.min_abs_trace = kInf;
  for_each_primitive_class(opt.cap, [&](const BlockTower& t) {
    ClassRecord r = class_record(rho, t, opt.low_ratio);
    ag.min_abs_trace = std::min(ag.min_abs_trace, std::abs(r.trace));
    if (r.ratio < ag.min_ratio) {
      ag.min_ratio = r.ratio;
      ag.argmin = r.slope;
    }
    if (std::abs(r.trace) <= 2 + rho.config.tol) ++ag.small_trace;
    if (r.violation) ++ag.violations;
    rep.records.push_back(std::move(r));
  });
  ag.classes = rep.records.size();
  ag.C = ag.min_ratio > 0 ? std::max(1.0, 1.0 / ag.min_ratio) : kInf;
  ag.D = 0;
  if (std::isfinite(ag.C))
    for (const auto& r : rep.records)
      ag.D = std::max(ag.D, static_cast<double>(r.length) / ag.C - r.translation);

  // Least squares through the origin of translation against length.
  double sxy = 0, sxx = 0;
  for (const auto& r : rep.records) {
    sxy += static_cast<double>(r.length) * r.translation;
    sxx += static_cast<double>(r.length) * static_cast<double>(r.length);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0;
  ag.ls_C = slope > 0 ? std::max(1.0, 1.0 / slope) : kInf;
  ag.ls_D = 0;
  if (std::isfinite(ag.ls_C))
    for (const auto& r : rep.records)
      ag.ls_D = std::max(ag.ls_D, static_cast<double>(r.length) / ag.ls_C - r.translation);

  const Mat comm = rho.A * rho.B * inverse_sl2(rho.A) * inverse_sl2(rho.B);
  ag.commutator_trace = trace(comm);

  const Scaled ab = Scaled{rho.A, 0} * Scaled{rho.B, 0};
  const auto fr = fricke_traces(trace(rho.A), trace(rho.B), ab.trace_value(), opt.cap);
  for (const auto& r : rep.records) {
    auto it = fr.find({r.slope.p, r.slope.q});
    if (it == fr.end()) continue;
    ag.fricke_deviation =
        std::max(ag.fricke_deviation, std::abs(it->second - r.trace) / std::max(1.0, std::abs(r.trace)));
  }
  if (rep.records.empty()) ag.min_ratio = 0;
  return rep;
}

PsReport ps_scan(const Representation& rho, const PsOptions& opt) {
  if (opt.window != 0 && opt.window < 2) throw PreconditionError("window must be at least 2");
  if (opt.span < 3) throw PreconditionError("span must cover at least 3 periods");
  const BowditchReport bw = bowditch_scan(rho, BowditchOptions{opt.cap, 0});
  PsReport rep;
  PsAggregate& ag = rep.aggregate;
  ag.bowditch_C = bw.aggregate.C;
  ag.bowditch_D = bw.aggregate.D;
  ag.min_lower_ratio = kInf;

  std::vector<BlockTower> towers;
  std::size_t idx = 0;
  for_each_primitive_class(opt.cap, [&](const BlockTower& t) {
    PsRecord r;
    r.base = bw.records[idx++];
    towers.push_back(t);
    if (r.base.violation) {
      ++ag.violations;
      ag.min_lower_ratio = 0;
      rep.records.push_back(std::move(r));
      return;
    }
    const Word gamma = t.representative();
    const std::size_t n = gamma.size();
    const std::size_t V = static_cast<std::size_t>(opt.span) * n + 1;  // vertices of the sampled leaf
    const std::size_t wmax = std::min<std::size_t>(opt.window ? opt.window : 2 * n, V - 1);
    // d(x_m, x_(m + d)) = d(o, rho(w) o) for the cyclic subword w of length d at m,
    // and the leaf is invariant under gamma, so offsets in one period suffice.
    std::vector<double> D(wmax + 1, kInf);
    for (std::size_t m = 0; m < n; ++m) {
      Scaled g;
      for (std::size_t d = 1; d <= wmax && m + d < V; ++d) {
        g = g * Scaled{letter_matrix(rho, gamma[(m + d - 1) % n]), 0};
        D[d] = std::min(D[d], orbit_distance(g, rho.o));
      }
    }
    double s = kInf;
    for (std::size_t d = std::max<std::size_t>(1, (wmax + 1) / 2); d <= wmax; ++d)
      s = std::min(s, D[d] / static_cast<double>(d));
    double k = 0;
    for (std::size_t d = 1; d <= wmax; ++d) k = std::max(k, s * static_cast<double>(d) - D[d]);
    r.lower_ratio = s;
    r.additive = k;
    const ExcursionProfile e = excursion_profile(rho, gamma, opt.step);
    r.tubular_radius = e.max_value();

    ag.min_lower_ratio = std::min(ag.min_lower_ratio, s);
    ag.max_additive = std::max(ag.max_additive, k);
    ag.max_tubular_radius = std::max(ag.max_tubular_radius, r.tubular_radius);
    rep.records.push_back(std::move(r));
  });
  ag.classes = rep.records.size();

  const double cp = rho.c_prime(), delta = rho.config.delta;
  ag.threshold = ag.bowditch_C * (4 * cp + 24 * delta + 2 * ag.max_tubular_radius + ag.bowditch_D);
  for (std::size_t c = 0; c < rep.records.size(); ++c) {
    PsRecord& r = rep.records[c];
    if (r.base.violation) continue;
    const BlockTower& t = towers[c];
    for (int i = t.depth(); i >= 0; --i) {
      if (static_cast<double>(t.l[i]) > ag.threshold) {
        r.projection.applicable = true;
        r.projection.stride = t.l[i];
      }
    }
    if (!r.projection.applicable) continue;
    ++ag.projection_checked;
    // H(x_(m + stride)) - H(x_m) is the signed foot of rho(w) o on the m-th
    // conjugate axis, w the subword of length stride at m; one period of offsets
    // covers every sampled pair of the leaf.
    const Word gamma = t.representative();
    const std::size_t n = gamma.size();
    const auto axes = conjugate_axes(rho, gamma);
    const auto stride = static_cast<std::size_t>(r.projection.stride);
    for (std::size_t m = 0; m < n; ++m) {
      const Scaled w = word_matrix(rho, subword(gamma, m, stride, Reading::cyclic));
      const Point p = act(w.m, rho.o);
      if (!(geodesic_metrics(p, axes[m]).m.signed_h > 0)) r.projection.monotone = false;
    }
    if (!r.projection.monotone) {
      r.base.flags.push_back("projection-order");
      r.base.violation = true;
      ++ag.violations;
    }
  }
  if (rep.records.empty()) ag.min_lower_ratio = 0;
  return rep;
}

Representation perturb(const Representation& rho, double eps, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const bool complex_noise = rho.config.model == Model::H3;
  auto jitter = [&](Mat m) {
    for (int k = 0; k < 4; ++k) {
      const double re = eps * u(rng);
      const double im = complex_noise ? eps * u(rng) : 0.0;
      m(k / 2, k % 2) += std::complex<double>(re, im);
    }
    m /= std::sqrt(det(m));
    return m;
  };
  Representation r = rho;
  if (eps == 0) return r;
  r.A = jitter(rho.A);
  r.B = jitter(rho.B);
  return r;
}

PerturbationReport perturbation_scan(const Representation& rho, double eps, int cap, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("at least one trial is needed");
  if (eps < 0) throw PreconditionError("eps must be non-negative");
  PerturbationReport rep;
  for (int t = 0; t < trials; ++t)
    rep.min_ratios.push_back(bowditch_scan(perturb(rho, eps, seed, t), BowditchOptions{cap, 0}).aggregate.min_ratio);
  std::vector<double> sorted = rep.min_ratios;
  std::sort(sorted.begin(), sorted.end());
  rep.min = sorted.front();
  const std::size_t n = sorted.size();
  rep.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return rep;
}

LocalGlobalRow measure_local_global(const Representation& rho, const std::vector<Word>& words, int window,
                                    double reference_slope) {
  if (window < 1) throw PreconditionError("window must be positive");
  LocalGlobalRow row;
  row.local_lower_ratio = kInf;
  row.global_lower_ratio = kInf;
  for (const Word& w : words) {
    row.length = std::max<int>(row.length, static_cast<int>(w.size()));
    // d(x_m, x_n) = d(o, rho(w[m, n)) o) with scaled products; orbit points
    // themselves overflow long before the lengths of interest.
    const std::size_t L = w.size();
    for (std::size_t m = 0; m < L; ++m) {
      Scaled g;
      for (std::size_t n = m + 1; n <= L; ++n) {
        g = g * Scaled{letter_matrix(rho, w[n - 1]), 0};
        const double gap = static_cast<double>(n - m);
        const double d = orbit_distance(g, rho.o);
        if (n - m <= static_cast<std::size_t>(window)) row.local_lower_ratio = std::min(row.local_lower_ratio, d / gap);
        if (n - m >= static_cast<std::size_t>(window)) row.global_lower_ratio = std::min(row.global_lower_ratio, d / gap);
        row.global_additive = std::max(row.global_additive, reference_slope * gap - d);
      }
    }
  }
  if (!std::isfinite(row.global_lower_ratio)) row.global_lower_ratio = row.local_lower_ratio;
  return row;
}

LocalGlobalReport local_global_scan(const Representation& rho, const LocalGlobalOptions& opt) {
  if (opt.power_floor < 1) throw PreconditionError("power floor N must be at least 1");
  if (opt.lengths.empty() || opt.samples < 1) throw PreconditionError("nothing to sample");
  LocalGlobalReport rep;
  const Axis ax = axis_of(rho.A, rho.config.tol);
  rep.a_plus = ax.to;
  rep.a_minus = ax.from;
  rep.b_of_a_plus = act(rho.B, ax.to);
  if (close(rep.b_of_a_plus, rep.a_minus, 1e-9)) throw PreconditionError("B maps the attracting point of A to its repelling point");

  const int longest = *std::max_element(opt.lengths.begin(), opt.lengths.end());
  std::mt19937_64 rng(opt.seed);
  std::geometric_distribution<int> extra(1.0 / (1.0 + opt.extra_power_mean));
  std::vector<Word> samples;
  for (int s = 0; s < opt.samples; ++s) {
    std::string w;
    while (static_cast<int>(w.size()) < longest) {
      w.push_back('b');
      w.append(static_cast<std::size_t>(opt.power_floor + extra(rng)), 'a');
    }
    w.resize(static_cast<std::size_t>(longest));
    samples.emplace_back(w);
  }
  auto prefixes = [&](int len) {
    std::vector<Word> out;
    for (const Word& w : samples) out.push_back(subword(w, 0, std::min<std::size_t>(w.size(), len)));
    return out;
  };
  // Half the smallest local ratio, shared by every length.
  double local = kInf;
  for (int len : opt.lengths) local = std::min(local, measure_local_global(rho, prefixes(len), opt.window, 0).local_lower_ratio);
  rep.reference_slope = 0.5 * local;
  for (int len : opt.lengths) rep.rows.push_back(measure_local_global(rho, prefixes(len), opt.window, rep.reference_slope));
  return rep;
}

}  // namespace primstab
