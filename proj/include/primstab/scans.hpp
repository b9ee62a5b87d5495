#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "primstab/representation.hpp"

namespace primstab {

struct ClassRecord {
  Slope slope;
  std::size_t length = 0;
  std::complex<double> trace;
  double translation = 0;
  double ratio = 0;                  // translation / length
  std::vector<std::string> flags;    // elliptic, parabolic, low-ratio, ...
  bool violation = false;
};

struct BowditchOptions {
  int cap = 10;
  double low_ratio = 0;              // ratios below this are flagged
};

struct BowditchAggregate {
  std::size_t classes = 0;
  double min_ratio = 0;
  Slope argmin;
  double C = 1;                      // max(1, 1 / min_ratio); infinite when min_ratio = 0
  double D = 0;                      // additive defect needed with C
  double ls_C = 0, ls_D = 0;         // least-squares slope fit of translation against length
  std::complex<double> commutator_trace;
  double min_abs_trace = 0;
  std::size_t small_trace = 0;       // classes with |Tr| <= 2
  std::size_t violations = 0;
  double fricke_deviation = 0;       // max relative difference against the trace recursion
};

struct BowditchReport {
  std::vector<ClassRecord> records;
  BowditchAggregate aggregate;
};

BowditchReport bowditch_scan(const Representation& rho, const BowditchOptions& opt);

// Traces of all enumerated classes up to cap from tr a, tr b, tr ab via
// tr(UV) = tr U tr V - tr(U V^-1) along the Farey tree.
std::map<std::pair<long long, long long>, std::complex<double>> fricke_traces(
    std::complex<double> x, std::complex<double> y, std::complex<double> z, int cap);

struct ProjectionCheck {
  bool applicable = false;           // some l_i exceeds the threshold
  long long stride = 0;
  bool monotone = true;
};

struct PsRecord {
  ClassRecord base;
  double lower_ratio = 0;            // 1 / lambda
  double additive = 0;               // k
  double tubular_radius = 0;         // max E over one period
  ProjectionCheck projection;
};

struct PsOptions {
  int cap = 10;
  int window = 0;                    // 0 picks 2 |gamma| per class; otherwise >= 2
  int span = 3;
  double step = 0.25;
};

struct PsAggregate {
  std::size_t classes = 0;
  double min_lower_ratio = 0;
  double max_additive = 0;
  double max_tubular_radius = 0;
  double bowditch_C = 1, bowditch_D = 0;
  double threshold = 0;              // C (4 C' + 24 delta + 2 K + D)
  std::size_t projection_checked = 0;
  std::size_t violations = 0;
};

struct PsReport {
  std::vector<PsRecord> records;
  PsAggregate aggregate;
};

PsReport ps_scan(const Representation& rho, const PsOptions& opt);

struct PerturbationReport {
  std::vector<double> min_ratios;    // one per trial
  double min = 0, median = 0;
};

// Each entry moves by uniform noise in [-eps, eps] (imaginary parts too in H3),
// then det is renormalized to 1.
Representation perturb(const Representation& rho, double eps, std::uint64_t seed, int trial);
PerturbationReport perturbation_scan(const Representation& rho, double eps, int cap, int trials, std::uint64_t seed);

struct LocalGlobalOptions {
  int power_floor = 3;               // N in (B A^N A^*)^*
  int window = 10;                   // local window L
  std::vector<int> lengths{10, 25, 50, 100, 200};
  int samples = 8;
  double extra_power_mean = 1.0;
  std::uint64_t seed = 1;
};

struct LocalGlobalRow {
  int length = 0;
  double local_lower_ratio = 0;      // min over windows of d / |m - n|
  double global_lower_ratio = 0;     // min over pairs with |m - n| >= window
  double global_additive = 0;        // max (s |m - n| - d), s = half the local ratio
};

struct LocalGlobalReport {
  Boundary a_plus, a_minus, b_of_a_plus;
  double reference_slope = 0;
  std::vector<LocalGlobalRow> rows;
};

// Random words of shape (B A^N A^*)^*; A must be loxodromic with B(A+) != A-.
// Words for shorter lengths are prefixes of the longest sample.
LocalGlobalReport local_global_scan(const Representation& rho, const LocalGlobalOptions& opt);
// Same measurements on explicit words over {a, b}.
LocalGlobalRow measure_local_global(const Representation& rho, const std::vector<Word>& words, int window,
                                   double reference_slope);

}  // namespace primstab
