#include "primstab/lemmas.hpp"

#include <algorithm>
#include <numeric>

#include "primstab/errors.hpp"

namespace primstab {

namespace {

void check_level(const BlockTower& t, int i) {
  if (i < 0 || i > t.depth())
    throw PreconditionError("block level " + std::to_string(i) + " outside [0, " + std::to_string(t.depth()) + "]");
}

// match[s] is true when pattern occurs in cyclic w at offset s.
std::vector<bool> cyclic_matches(std::span<const Letter> w, std::span<const Letter> pattern) {
  const std::size_t n = w.size(), m = pattern.size();
  std::vector<bool> hit(n, false);
  if (m > n) return hit;
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t i = 0;
    while (i < m && w[(s + i) % n] == pattern[i]) ++i;
    hit[s] = i == m;
  }
  return hit;
}

bool starts_with(std::span<const Letter> y, std::span<const Letter> x) {
  return x.size() <= y.size() && std::equal(x.begin(), x.end(), y.begin());
}

bool ends_with(std::span<const Letter> y, std::span<const Letter> x) {
  return x.size() <= y.size() && std::equal(x.begin(), x.end(), y.end() - static_cast<std::ptrdiff_t>(x.size()));
}

}  // namespace

std::string_view to_string(BlockRelation r) {
  switch (r) {
    case BlockRelation::prefix: return "prefix";
    case BlockRelation::suffix: return "suffix";
    case BlockRelation::both: return "both";
  }
  return "prefix";
}

std::size_t find_cyclic(const Word& w, const Word& u) {
  if (u.size() > w.size()) return static_cast<std::size_t>(-1);
  if (u.empty()) return 0;
  auto hit = cyclic_matches(w.letters(), u.letters());
  auto it = std::find(hit.begin(), hit.end(), true);
  return it == hit.end() ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(it - hit.begin());
}

AdaptedRewriting adapted_permutation(const BlockTower& t, int i, std::size_t k) {
  check_level(t, i);
  const Word& wi = t.w[i];
  const Word& wpi = t.wp[i];
  if (k >= wi.size()) throw PreconditionError("rotation index outside [0, l_i)");
  const Word& top = t.top();
  const std::size_t n = top.size();
  const Word x = rotate(wi, k);
  auto hx = cyclic_matches(top.letters(), x.letters());

  for (std::size_t j = 0; j < wpi.size(); ++j) {
    const Word y = rotate(wpi, j);
    const bool pre = starts_with(y.letters(), x.letters());
    const bool suf = ends_with(y.letters(), x.letters());
    if (!pre && !suf) continue;
    auto hy = cyclic_matches(top.letters(), y.letters());
    const std::size_t lx = x.size(), ly = y.size();
    for (std::size_t s = 0; s < n; ++s) {
      if (!hx[s] && !hy[s]) continue;
      // from[off] records the block that reached offset off; 0 = unreached.
      std::vector<int> from(n + 1, 0);
      from[0] = 3;
      for (std::size_t off = 0; off < n; ++off) {
        if (!from[off]) continue;
        const std::size_t pos = (s + off) % n;
        if (hx[pos] && off + lx <= n && !from[off + lx]) from[off + lx] = 1;
        if (hy[pos] && off + ly <= n && !from[off + ly]) from[off + ly] = 2;
      }
      if (!from[n]) continue;
      AdaptedRewriting r;
      r.j = j;
      r.rotation = s;
      r.relation = pre && suf ? BlockRelation::both : (pre ? BlockRelation::prefix : BlockRelation::suffix);
      for (std::size_t off = n; off > 0;) {
        const bool is_y = from[off] == 2;
        r.blocks.push_back(is_y);
        off -= is_y ? ly : lx;
      }
      std::reverse(r.blocks.begin(), r.blocks.end());
      r.x = x;
      r.y = y;
      return r;
    }
  }
  throw InternalViolation("no adapted rewriting for level " + std::to_string(i) + ", rotation " +
                          std::to_string(k) + " of " + t.canonical.str());
}

MagicWitness classify_magic_subword(const BlockTower& t, int i, const Word& u) {
  check_level(t, i);
  const Word& wi = t.w[i];
  const std::size_t l = wi.size();
  if (u.size() != l) throw PreconditionError("subword length differs from l_i");
  if (find_cyclic(t.top(), u) == static_cast<std::size_t>(-1))
    throw PreconditionError("'" + u.str() + "' is not a cyclic subword of w_r");
  auto letters = wi.letters();
  auto rot_at = [&](std::size_t s, std::size_t idx) { return letters[(s + idx) % l]; };
  for (std::size_t s = 0; s < l; ++s) {
    std::size_t m = 0;
    while (m < l && u[m] == rot_at(s, m)) ++m;
    if (m == l) return MagicWitness{true, s, u.back()};
  }
  for (std::size_t s = 0; s < l; ++s) {
    std::size_t m = 0;
    while (m + 1 < l && u[m] == rot_at(s, m)) ++m;
    if (m + 1 == l) return MagicWitness{false, s, rot_at(s, l - 1)};
  }
  throw InternalViolation("'" + u.str() + "' is neither a rotation of w_" + std::to_string(i) +
                          " nor one letter away from one");
}

BlockCount count_block_occurrences(const AdaptedRewriting& r, std::size_t l_top, std::size_t l_i, std::size_t offset,
                                   std::size_t length) {
  const std::size_t n = l_top;
  if (length > n) throw PreconditionError("subword longer than w_r");
  if (offset >= n) throw PreconditionError("offset outside w_r");
  if (length <= 4 * l_i) throw PreconditionError("|u| / l_i must exceed 4");
  BlockCount c;
  c.alpha = static_cast<double>(length) / static_cast<double>(l_i);
  c.guaranteed = (c.alpha - 4.0) / 2.0;
  std::size_t start = r.rotation;
  for (bool is_y : r.blocks) {
    const std::size_t len = is_y ? r.y.size() : r.x.size();
    if ((start + n - offset) % n + len <= length) ++c.count;
    start = (start + len) % n;
  }
  return c;
}

BlockCount count_block_occurrences(const BlockTower& t, int i, std::size_t k, std::size_t offset,
                                   std::size_t length) {
  check_level(t, i);
  const std::size_t n = t.top().size(), li = t.w[i].size();
  if (length <= 4 * li) throw PreconditionError("|u| / l_i must exceed 4");
  return count_block_occurrences(adapted_permutation(t, i, k), n, li, offset, length);
}

BlockCount count_block_occurrences(const Word& u, const BlockTower& t, int i, std::size_t k) {
  const std::size_t off = find_cyclic(t.top(), u);
  if (off == static_cast<std::size_t>(-1)) throw PreconditionError("'" + u.str() + "' is not a cyclic subword of w_r");
  return count_block_occurrences(t, i, k, off, u.size());
}

std::vector<BlockTower> towers_up_to(long long max_block_len) {
  std::vector<BlockTower> out;
  if (max_block_len >= 1) out.push_back(build_blocks(1, 0));
  for (long long q = 1; q <= max_block_len; ++q)
    for (long long p = q; p + q <= max_block_len; ++p)
      if (std::gcd(p, q) == 1) out.push_back(build_blocks(p, q));
  return out;
}

LemmaSuiteResult run_lemma_suite(const std::string& suite, long long max_block_len) {
  LemmaSuiteResult res;
  res.suite = suite;
  auto fail = [&](const BlockTower& t, const std::string& what) {
    ++res.failures;
    if (res.examples.size() < 10) res.examples.push_back(t.canonical.str() + ": " + what);
  };
  const auto towers = towers_up_to(max_block_len);
  res.towers = towers.size();
  for (const BlockTower& t : towers) {
    const Word& top = t.top();
    const std::size_t n = top.size();
    if (suite == "recurrences") {
      ++res.cases;
      for (const auto& e : check_tower(t)) fail(t, e);
    } else if (suite == "magic-len") {
      for (int i = 0; i <= t.depth(); ++i) {
        const std::size_t li = t.w[i].size();
        if (li > n) continue;
        for (std::size_t off = 0; off < n; ++off) {
          ++res.cases;
          const Word u = subword(top, off, li, Reading::cyclic);
          try {
            const MagicWitness m = classify_magic_subword(t, i, u);
            std::vector<Letter> fixed(u.letters().begin(), u.letters().end());
            if (!m.exact) fixed.back() = m.fixed_last;
            if (Word(fixed) != rotate(t.w[i], m.rotation)) fail(t, "witness does not reproduce " + u.str());
          } catch (const std::exception& e) {
            fail(t, e.what());
          }
        }
      }
    } else if (suite == "perm-cycl") {
      for (int i = 0; i <= t.depth(); ++i) {
        for (std::size_t k = 0; k < t.w[i].size(); ++k) {
          ++res.cases;
          try {
            const AdaptedRewriting r = adapted_permutation(t, i, k);
            std::vector<Letter> cat;
            for (bool is_y : r.blocks) {
              const Word& b = is_y ? r.y : r.x;
              cat.insert(cat.end(), b.letters().begin(), b.letters().end());
            }
            if (Word(cat) != rotate(top, r.rotation)) fail(t, "blocks do not spell the rotation");
            if (r.x != rotate(t.w[i], k) || r.y != rotate(t.wp[i], r.j)) fail(t, "blocks are not the stated rotations");
          } catch (const std::exception& e) {
            fail(t, e.what());
          }
        }
      }
    } else if (suite == "bloc") {
      for (int i = 0; i <= t.depth(); ++i) {
        const std::size_t li = t.w[i].size();
        if (4 * li >= n) continue;
        for (std::size_t k = 0; k < li; ++k) {
          const AdaptedRewriting r = adapted_permutation(t, i, k);
          for (std::size_t len = 4 * li + 1; len <= n; ++len) {
            for (std::size_t off = 0; off < n; ++off) {
              ++res.cases;
              const BlockCount c = count_block_occurrences(r, n, li, off, len);
              if (static_cast<double>(c.count) < c.guaranteed)
                fail(t, "i=" + std::to_string(i) + " k=" + std::to_string(k) + " offset " + std::to_string(off) +
                            " length " + std::to_string(len) + ": " + std::to_string(c.count) + " blocks");
            }
          }
        }
      }
    } else {
      throw PreconditionError("unknown lemma suite '" + suite + "'");
    }
  }
  return res;
}

}  // namespace primstab
