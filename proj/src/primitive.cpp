#include "primstab/primitive.hpp"

#include <algorithm>
#include <numeric>

#include "primstab/errors.hpp"

namespace primstab {

namespace {

long long floor_div(long long a, long long b) {
  long long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

long long abs_ll(long long x) { return x < 0 ? -x : x; }

}  // namespace

std::vector<int> cf_expansion(long long p, long long q) {
  if (q <= 0) throw PreconditionError("continued fraction needs a positive denominator");
  if (std::gcd(abs_ll(p), q) != 1)
    throw PreconditionError(std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
  std::vector<int> cf;
  long long a = p, b = q;
  while (b != 0) {
    long long n = floor_div(a, b);
    cf.push_back(static_cast<int>(n));
    long long r = a - n * b;
    a = b;
    b = r;
  }
  return cf;
}

Slope make_slope(long long p, long long q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 0) {
    if (abs_ll(p) != 1) throw PreconditionError(std::to_string(p) + "/0 is not a reduced slope");
    return Slope{1, 0, {}};
  }
  return Slope{p, q, cf_expansion(p, q)};
}

Slope slope_from_cf(const std::vector<int>& cf) {
  if (cf.empty()) return Slope{1, 0, {}};
  long long p = 1, q = 0;
  for (auto it = cf.rbegin(); it != cf.rend(); ++it) {
    long long np = *it * p + q;
    q = p;
    p = np;
  }
  return make_slope(p, q);
}

Letter Substitution::apply(Letter x) const {
  if (swap) x = static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 2u);
  if (negate_b && !is_a_family(x)) x = inverse(x);
  return x;
}

Word Substitution::apply(const Word& w) const {
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  for (Letter& x : out) x = apply(x);
  return Word(out);
}

std::string Substitution::name() const {
  if (swap && negate_b) return "swap+negate";
  if (swap) return "swap";
  if (negate_b) return "negate";
  return "none";
}

TowerLengths tower_lengths(const std::vector<int>& cf) {
  TowerLengths t{cf, {1}, {2}};
  for (int n : cf) {
    long long l = (n - 1) * t.l.back() + t.lp.back();
    long long lp = n * t.l.back() + t.lp.back();
    t.l.push_back(l);
    t.lp.push_back(lp);
  }
  return t;
}

BlockTower build_blocks(const Slope& slope) {
  BlockTower t;
  t.slope = slope;
  long long p = slope.p, q = slope.q;
  if (q == 0) {
    t.canonical = Slope{1, 0, {}};
  } else {
    if (p < 0) {
      t.substitution.negate_b = true;
      p = -p;
    }
    if (p < q) {
      t.substitution.swap = true;
      std::swap(p, q);
    }
    t.canonical = make_slope(p, q);
  }
  t.w.push_back(Word("a"));
  t.wp.push_back(Word("ab"));
  t.l.push_back(1);
  t.lp.push_back(2);
  for (int n : t.canonical.cf) {
    if (n < 1) throw InternalViolation("canonical slope below 1");
    Word head = power(t.w.back(), n - 1);
    t.w.push_back(head * t.wp.back());
    t.wp.push_back(t.w[t.w.size() - 2] * t.w.back());
    t.l.push_back(static_cast<long long>(t.w.back().size()));
    t.lp.push_back(static_cast<long long>(t.wp.back().size()));
  }
  return t;
}

std::vector<std::string> check_tower_lengths(const TowerLengths& t) {
  std::vector<std::string> bad;
  auto fail = [&](int i, const std::string& what) { bad.push_back("i=" + std::to_string(i) + ": " + what); };
  const int r = static_cast<int>(t.cf.size());
  if (t.lp[0] != 2 * t.l[0]) fail(0, "l'_0 != 2 l_0");
  for (int i = 0; i <= r; ++i) {
    const long long l = t.l[i], lp = t.lp[i];
    if (i + 1 > l) fail(i, "i + 1 > l_i");
    if (i == 0) continue;
    const long long n = t.cf[i - 1];
    const long long lm = t.l[i - 1];
    if (l != (n - 1) * lm + t.lp[i - 1]) fail(i, "l_i recurrence");
    if (lp != n * lm + t.lp[i - 1]) fail(i, "l'_i recurrence");
    if (lp != l + lm) fail(i, "l'_i != l_i + l_{i-1}");
    if (!(l < lp && lp < 2 * l)) fail(i, "l_i < l'_i < 2 l_i");
    if (i == 1) {
      if (l != (n + 1) * lm) fail(i, "l_1 != (n_1 + 1) l_0");
    } else if (!(n * lm < l && l < (n + 1) * lm)) {
      fail(i, "n_i < l_i / l_{i-1} < n_i + 1");
    }
    if (i >= 2) {
      const long long np = t.cf[i - 2];
      const long long lhs = (np + 2) * lm, rhs = (np + 1) * l;
      if (i >= 3 && !(lhs < rhs)) fail(i, "1 + 1/(n_{i-1} + 1) < l_i / l_{i-1}");
      if (i == 2 && (lhs > rhs || ((lhs == rhs) != (n == 1)))) fail(i, "boundary form at i = 2");
    }
  }
  return bad;
}

std::vector<std::string> check_tower(const BlockTower& t) {
  TowerLengths tl{t.canonical.cf, t.l, t.lp};
  auto bad = check_tower_lengths(tl);
  for (int i = 0; i <= t.depth(); ++i) {
    if (static_cast<long long>(t.w[i].size()) != t.l[i] || static_cast<long long>(t.wp[i].size()) != t.lp[i])
      bad.push_back("i=" + std::to_string(i) + ": word length differs from recurrence");
    if (i >= 1 && t.wp[i] != t.w[i - 1] * t.w[i])
      bad.push_back("i=" + std::to_string(i) + ": w'_i != w_{i-1} w_i");
  }
  AbelianImage ab = abelianize(t.top());
  if (ab.p != t.canonical.p || ab.q != t.canonical.q) bad.push_back("Ab(w_r) differs from the slope");
  AbelianImage orig = abelianize(t.representative());
  if (orig.p != t.slope.p || orig.q != t.slope.q)
    bad.push_back("representative has the wrong abelian image");
  return bad;
}

std::vector<int> DerivationTrace::values() const {
  std::vector<int> v;
  for (const auto& s : steps) v.push_back(s.value);
  return v;
}

DerivationTrace derivation_suite(const Word& w) {
  DerivationTrace tr;
  tr.input = w;
  tr.cyclic = cyclic_reduce(w);
  if (tr.cyclic.empty()) {
    tr.reason = "trivial class";
    return tr;
  }
  AlphabetClass cls = alphabet_class(tr.cyclic);
  tr.quadrant = cls.quadrant;
  if (cls.quadrant == Quadrant::mixed) {
    tr.reason = "uses a letter and its inverse";
    return tr;
  }
  tr.relabeled = cls.relabeled;

  std::vector<Letter> cur(tr.relabeled.letters().begin(), tr.relabeled.letters().end());
  for (;;) {
    const std::size_t n = cur.size();
    if (n == 1) {
      tr.primitive = true;
      tr.reason = "single letter";
      return tr;
    }
    bool has_a = false, has_b = false, aa = false, bb = false;
    for (std::size_t i = 0; i < n; ++i) {
      Letter x = cur[i], y = cur[(i + 1) % n];
      (x == Letter::a ? has_a : has_b) = true;
      if (x == y) (x == Letter::a ? aa : bb) = true;
    }
    if (!has_a || !has_b) {
      tr.reason = "proper power of a letter";
      return tr;
    }
    Letter small;
    if (!bb)
      small = Letter::b;
    else if (!aa)
      small = Letter::a;
    else {
      tr.reason = "no isolated letter";
      return tr;
    }
    const Letter big = small == Letter::a ? Letter::b : Letter::a;

    std::size_t k = 0;
    while (cur[k] != small) ++k;
    std::vector<Letter> rot(cur.begin() + static_cast<std::ptrdiff_t>(k + 1), cur.end());
    rot.insert(rot.end(), cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k + 1));

    std::vector<int> runs;
    int run = 0;
    for (Letter x : rot) {
      if (x == big) {
        ++run;
      } else {
        runs.push_back(run);
        run = 0;
      }
    }
    auto [lo, hi] = std::minmax_element(runs.begin(), runs.end());
    if (*hi - *lo > 1) {
      tr.reason = "powers take more than two consecutive values";
      return tr;
    }
    const int value = *lo;
    std::vector<Letter> next;
    for (int m : runs) {
      if (m == value + 1) next.push_back(big);
      next.push_back(small);
    }
    DerivationStep step;
    step.word = Word(rot);
    step.isolated = small;
    step.value = value;
    step.derived = Word(next);
    tr.steps.push_back(std::move(step));
    cur = std::move(next);
  }
}

Slope slope_of(const Word& w) {
  DerivationTrace tr = derivation_suite(w);
  if (!tr.primitive) throw PreconditionError("'" + w.str() + "' is not primitive: " + tr.reason);
  AbelianImage ab = abelianize(tr.cyclic);
  return make_slope(ab.p, ab.q);
}

std::vector<Slope> enumerate_slopes(int cap) {
  if (cap < 1) throw PreconditionError("enumeration cap must be at least 1");
  std::vector<Slope> out{Slope{1, 0, {}}};
  for (long long q = 1; q <= cap; ++q)
    for (long long p = (q == 1 ? 0 : 1); p <= cap; ++p)
      if (std::gcd(p, q) == 1) out.push_back(make_slope(p, q));
  return out;
}

void for_each_primitive_class(int cap, const std::function<void(const BlockTower&)>& fn) {
  for (const Slope& s : enumerate_slopes(cap)) fn(build_blocks(s));
}

}  // namespace primstab
