#include <doctest.h>

#include <functional>

#include "primstab/errors.hpp"
#include "primstab/lemmas.hpp"

using namespace primstab;

namespace {

// Does s factor over {x, y}? Plain recursion on prefixes.
bool factors(const std::string& s, const std::string& x, const std::string& y) {
  if (s.empty()) return true;
  for (const std::string* b : {&x, &y})
    if (s.compare(0, b->size(), *b) == 0 && factors(s.substr(b->size()), x, y)) return true;
  return false;
}

// First (j, rotation) with a witness, in the search order of adapted_permutation.
std::pair<std::size_t, std::size_t> brute_adapted(const BlockTower& t, int i, std::size_t k) {
  const std::string x = rotate(t.w[i], k).str();
  const std::string top = t.top().str();
  for (std::size_t j = 0; j < t.wp[i].size(); ++j) {
    const std::string y = rotate(t.wp[i], j).str();
    const bool pre = y.compare(0, x.size(), x) == 0;
    const bool suf = y.compare(y.size() - x.size(), x.size(), x) == 0;
    if (!pre && !suf) continue;
    for (std::size_t s = 0; s < top.size(); ++s)
      if (factors(top.substr(s) + top.substr(0, s), x, y)) return {j, s};
  }
  return {std::size_t(-1), std::size_t(-1)};
}

}  // namespace

TEST_CASE("adapted permutation on [1, 2]") {
  const BlockTower t = build_blocks(slope_from_cf({1, 2}));
  const AdaptedRewriting r = adapted_permutation(t, 1, 1);
  CHECK(r.x.str() == "ba");
  CHECK(r.j == 1);
  CHECK(r.y.str() == "aba");
  CHECK(r.relation == BlockRelation::suffix);
  CHECK(r.rotation == 1);
  CHECK(r.blocks == std::vector<bool>{false, true});
}

TEST_CASE("adapted permutation with k = 0 keeps j = 0") {
  for (const BlockTower& t : towers_up_to(40))
    for (int i = 0; i <= t.depth(); ++i) {
      const AdaptedRewriting r = adapted_permutation(t, i, 0);
      CHECK(r.j == 0);
      CHECK(r.x == t.w[i]);
      CHECK(r.y == t.wp[i]);
    }
}

TEST_CASE("adapted permutation matches brute force") {
  const BlockTower t = build_blocks(slope_from_cf({2, 2}));
  CHECK(t.top().str() == "aabaaab");
  const AdaptedRewriting r = adapted_permutation(t, 1, 2);
  const auto [j, s] = brute_adapted(t, 1, 2);
  CHECK(r.j == j);
  CHECK(r.rotation == s);
  for (const BlockTower& u : towers_up_to(24))
    for (int i = 0; i <= u.depth(); ++i)
      for (std::size_t k = 0; k < u.w[i].size(); ++k) {
        const AdaptedRewriting a = adapted_permutation(u, i, k);
        const auto b = brute_adapted(u, i, k);
        CHECK(a.j == b.first);
        CHECK(a.rotation == b.second);
      }
}

TEST_CASE("adapted permutation rejects bad indices") {
  const BlockTower t = build_blocks(3, 2);
  CHECK_THROWS_AS(adapted_permutation(t, 3, 0), PreconditionError);
  CHECK_THROWS_AS(adapted_permutation(t, 1, 2), PreconditionError);
  CHECK_THROWS_AS(adapted_permutation(t, -1, 0), PreconditionError);
}

TEST_CASE("magic length classification on [1, 2]") {
  const BlockTower t = build_blocks(slope_from_cf({1, 2}));
  MagicWitness m = classify_magic_subword(t, 1, Word("ab"));
  CHECK(m.exact);
  CHECK(m.rotation == 0);
  m = classify_magic_subword(t, 1, Word("aa"));
  CHECK_FALSE(m.exact);
  CHECK(m.fixed_last == Letter::b);
  CHECK(m.rotation == 0);
  m = classify_magic_subword(t, 1, Word("ba"));
  CHECK(m.exact);
  CHECK(m.rotation == 1);
  CHECK_THROWS_AS(classify_magic_subword(t, 1, Word("bb")), PreconditionError);
  CHECK_THROWS_AS(classify_magic_subword(t, 1, Word("aba")), PreconditionError);
}

TEST_CASE("block count on the full word of [1, 2, 2]") {
  const BlockTower t = build_blocks(slope_from_cf({1, 2, 2}));
  REQUIRE(t.top().str() == "abaabababaab");
  const BlockCount c = count_block_occurrences(t, 1, 0, 0, 12);
  CHECK(c.alpha == doctest::Approx(6.0));
  CHECK(c.count == 5);
  CHECK(static_cast<double>(c.count) >= c.guaranteed);
  CHECK_THROWS_AS(count_block_occurrences(t, 1, 0, 0, 8), PreconditionError);
  CHECK_THROWS_AS(count_block_occurrences(Word("abaa"), t, 1, 0), PreconditionError);
}

TEST_CASE("block count against an independent window scan") {
  const BlockTower t = build_blocks(slope_from_cf({1, 1, 1, 2}));
  const std::size_t n = t.top().size();
  for (int i = 0; i <= t.depth(); ++i) {
    const std::size_t li = t.w[i].size();
    if (4 * li >= n) continue;
    for (std::size_t k = 0; k < li; ++k) {
      const AdaptedRewriting r = adapted_permutation(t, i, k);
      for (std::size_t len = 4 * li + 1; len <= n; ++len)
        for (std::size_t off = 0; off < n; ++off) {
          // A block lies in u when the linear indices of its letters inside u
          // are consecutive and all below |u|.
          std::size_t expect = 0, pos = r.rotation;
          for (bool is_y : r.blocks) {
            const std::size_t blen = is_y ? r.y.size() : r.x.size();
            bool inside = true;
            for (std::size_t m = 0; m < blen; ++m) {
              const std::size_t idx = (pos + m + n - off) % n;
              const std::size_t first = (pos + n - off) % n;
              inside = inside && idx < len && idx == first + m;
            }
            expect += inside;
            pos = (pos + blen) % n;
          }
          const BlockCount c = count_block_occurrences(r, n, li, off, len);
          CHECK(c.count == expect);
          CHECK(static_cast<double>(c.count) >= c.guaranteed);
          if (c.alpha >= 8) CHECK(c.count >= 2);
        }
    }
  }
}

TEST_CASE("lemma suites pass exhaustively at small size") {
  for (const char* s : {"recurrences", "magic-len", "perm-cycl", "bloc"}) {
    const LemmaSuiteResult r = run_lemma_suite(s, 30);
    CHECK_MESSAGE(r.failures == 0, s);
    CHECK(r.cases > 0);
  }
  CHECK_THROWS_AS(run_lemma_suite("nope", 10), PreconditionError);
}

TEST_CASE("towers up to a length") {
  const auto ts = towers_up_to(5);
  // 1/0, 1/1, 2/1, 3/1, 4/1, 3/2
  CHECK(ts.size() == 6);
  for (const auto& t : ts) CHECK(t.top().size() <= 5);
}

TEST_CASE("cyclic search") {
  CHECK(find_cyclic(Word("abaab"), Word("bab")) == 4);
  CHECK(find_cyclic(Word("abaab"), Word("bb")) == std::size_t(-1));
  CHECK(find_cyclic(Word("ab"), Word("aba")) == std::size_t(-1));
}
