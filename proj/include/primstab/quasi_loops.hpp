#pragma once

#include <optional>
#include <vector>

#include "primstab/representation.hpp"

namespace primstab {

// Cyclic subword w of gamma with d(rho(w) o, o) <= eps |w|.
struct QuasiLoop {
  std::size_t position = 0;
  std::size_t length = 0;
  Word word;
  double displacement = 0;
};

struct QuasiLoopOptions {
  double eps = 0.1;
  std::size_t min_length = 1;
  std::size_t max_gamma_length = 10000;
  // Multiplicative Bowditch constant; enables the coverage inequality check.
  std::optional<double> bowditch_c;
};

// Coverage check: if the disjoint loops cover a fraction lambda of gamma with
// lambda > 1 - (1/C - eps) / C', then d(rho(gamma') o, o) < |gamma| / C for the
// rotation gamma' of gamma starting at the first chosen loop.
struct CoverageCheck {
  double lambda = 0;
  double threshold = 1;
  bool triggered = false;
  double lhs = 0;   // d(rho(gamma') o, o)
  double rhs = 0;   // |gamma| / C
  bool holds = true;
};

struct QuasiLoopReport {
  std::vector<QuasiLoop> loops;
  std::vector<QuasiLoop> cover;   // greedy disjoint selection, longest first
  CoverageCheck coverage;
};

QuasiLoopReport find_quasi_loops(const Representation& rho, const Word& gamma, const QuasiLoopOptions& opt);

}  // namespace primstab
