#include <doctest.h>

#include <cmath>

#include "primstab/quasi_loops.hpp"

using namespace primstab;

namespace {

// A = X, B = X^-1 R with R a rotation by theta about o = (0, 1), so rho(ab) = R.
Representation near_elliptic(double theta) {
  const Mat X = make_mat<double>(2, 1, 1, 1);
  const Mat R = make_mat<double>(std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta));
  return make_representation(X, Mat(inverse_sl2(X) * R));
}

}  // namespace

TEST_CASE("trivial generator gives zero-displacement loops") {
  const Representation rho = make_representation(Mat::Identity(), make_mat<double>(1, 1, 1, 2));
  const QuasiLoopReport r = find_quasi_loops(rho, Word("aab"), QuasiLoopOptions{0.5, 1, 10000, {}});
  bool found = false;
  for (const QuasiLoop& q : r.loops)
    if (q.word.str() == "aa") {
      found = true;
      CHECK(q.displacement == doctest::Approx(0.0));
    }
  CHECK(found);
}

TEST_CASE("Markoff word has no quasi-loops at small eps") {
  const QuasiLoopReport r = find_quasi_loops(markoff_representation(), Word("abaab"), QuasiLoopOptions{0.01, 1, 10000, {}});
  CHECK(r.loops.empty());
  CHECK(r.cover.empty());
  CHECK(r.coverage.lambda == 0);
}

TEST_CASE("powers of a near-elliptic product are found") {
  const Representation rho = near_elliptic(0.01);
  const QuasiLoopReport r = find_quasi_loops(rho, Word("ababab"), QuasiLoopOptions{0.05, 2, 10000, {}});
  for (const char* w : {"ab", "abab", "ababab"}) {
    bool found = false;
    for (const QuasiLoop& q : r.loops) found = found || q.word.str() == w;
    CHECK_MESSAGE(found, w);
  }
}

TEST_CASE("every reported loop satisfies its inequality and none is missed") {
  for (const auto& [rho, gamma, eps] :
       std::vector<std::tuple<Representation, Word, double>>{{near_elliptic(0.02), Word("abaabab"), 0.3},
                                                             {markoff_representation(), Word("aabab"), 1.0},
                                                             {near_elliptic(0.3), Word("abababb"), 0.6}}) {
    const QuasiLoopReport r = find_quasi_loops(rho, gamma, QuasiLoopOptions{eps, 1, 10000, {}});
    std::size_t expected = 0;
    const std::size_t n = gamma.size();
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t len = 1; len <= n; ++len) {
        const Word w = subword(gamma, s, len, Reading::cyclic);
        Mat g = Mat::Identity();
        for (Letter x : w.letters()) g = g * letter_matrix(rho, x);
        expected += distance(act(g, rho.o), rho.o) <= eps * static_cast<double>(len);
      }
    CHECK(r.loops.size() == expected);
    for (const QuasiLoop& q : r.loops) {
      const double d = distance(act(word_matrix(rho, q.word).m, rho.o), rho.o);
      CHECK(d == doctest::Approx(q.displacement).epsilon(1e-9).scale(1));
      CHECK(d <= eps * static_cast<double>(q.length) + 1e-12);
    }
    // The cover is disjoint.
    std::vector<int> used(n, 0);
    for (const QuasiLoop& q : r.cover)
      for (std::size_t i = 0; i < q.length; ++i) ++used[(q.position + i) % n];
    for (int u : used) CHECK(u <= 1);
  }
}

TEST_CASE("coverage check") {
  const Representation rho = near_elliptic(0.01);
  QuasiLoopOptions opt{0.05, 2, 10000, 2.0};
  const QuasiLoopReport r = find_quasi_loops(rho, Word("ababab"), opt);
  CHECK(r.coverage.lambda == doctest::Approx(1.0));
  CHECK(r.coverage.threshold == doctest::Approx(1 - (0.5 - 0.05) / rho.c_prime()));
  CHECK(r.coverage.triggered);
  CHECK(r.coverage.rhs == doctest::Approx(3.0));
  CHECK(r.coverage.lhs < r.coverage.rhs);
  CHECK(r.coverage.holds);
}

TEST_CASE("quasi-loop preconditions") {
  const Representation rho = markoff_representation();
  CHECK_THROWS_AS(find_quasi_loops(rho, Word(""), {}), PreconditionError);
  CHECK_THROWS_AS(find_quasi_loops(rho, Word("abA"), {}), PreconditionError);
  CHECK_THROWS_AS(find_quasi_loops(rho, Word("ab"), QuasiLoopOptions{0, 1, 10, {}}), PreconditionError);
  CHECK_THROWS_AS(find_quasi_loops(rho, Word("abab"), QuasiLoopOptions{0.1, 1, 3, {}}), PreconditionError);
}
