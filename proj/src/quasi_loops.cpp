#include "primstab/quasi_loops.hpp"

#include <algorithm>

namespace primstab {

QuasiLoopReport find_quasi_loops(const Representation& rho, const Word& gamma, const QuasiLoopOptions& opt) {
  const std::size_t n = gamma.size();
  if (n == 0) throw PreconditionError("quasi-loop search on the empty word");
  if (!is_cyclically_reduced(gamma)) throw PreconditionError("gamma must be cyclically reduced");
  if (n > opt.max_gamma_length) throw PreconditionError("gamma exceeds the length cap");
  if (!(opt.eps > 0)) throw PreconditionError("eps must be positive");
  const std::size_t min_len = std::max<std::size_t>(opt.min_length, 1);

  std::vector<Mat> letters;
  for (Letter x : gamma.letters()) letters.push_back(letter_matrix(rho, x));

  QuasiLoopReport rep;
  for (std::size_t start = 0; start < n; ++start) {
    Scaled g;
    for (std::size_t len = 1; len <= n; ++len) {
      g = g * Scaled{letters[(start + len - 1) % n], 0};
      if (len < min_len) continue;
      const double d = orbit_distance(g, rho.o);
      if (d <= opt.eps * static_cast<double>(len))
        rep.loops.push_back({start, len, subword(gamma, start, len, Reading::cyclic), d});
    }
  }

  std::vector<const QuasiLoop*> order;
  for (const auto& q : rep.loops) order.push_back(&q);
  std::stable_sort(order.begin(), order.end(),
                   [](const QuasiLoop* x, const QuasiLoop* y) { return x->length > y->length; });
  std::vector<bool> used(n, false);
  std::size_t covered = 0;
  for (const QuasiLoop* q : order) {
    bool free = true;
    for (std::size_t i = 0; i < q->length && free; ++i) free = !used[(q->position + i) % n];
    if (!free) continue;
    for (std::size_t i = 0; i < q->length; ++i) used[(q->position + i) % n] = true;
    covered += q->length;
    rep.cover.push_back(*q);
  }

  CoverageCheck& cc = rep.coverage;
  cc.lambda = static_cast<double>(covered) / static_cast<double>(n);
  if (opt.bowditch_c) {
    const double C = *opt.bowditch_c, cp = rho.c_prime();
    cc.threshold = 1 - (1 / C - opt.eps) / cp;
    cc.triggered = !rep.cover.empty() && cc.lambda > cc.threshold;
    if (cc.triggered) {
      const std::size_t first =
          std::min_element(rep.cover.begin(), rep.cover.end(),
                           [](const QuasiLoop& x, const QuasiLoop& y) { return x.position < y.position; })
              ->position;
      cc.lhs = orbit_distance(word_matrix(rho, rotate(gamma, first)), rho.o);
      cc.rhs = static_cast<double>(n) / C;
      cc.holds = cc.lhs < cc.rhs;
    }
  }
  return rep;
}

}  // namespace primstab
