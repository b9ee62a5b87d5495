#pragma once

#include <functional>
#include <string>
#include <vector>

#include "primstab/words.hpp"

namespace primstab {

// Reduced fraction p/q with q >= 0. The slope 1/0 has an empty expansion.
// cf holds [n_1; n_2, ..., n_r] with n_i >= 1 for i >= 2 and n_r >= 2 when r >= 2.
struct Slope {
  long long p = 1;
  long long q = 0;
  std::vector<int> cf;

  bool is_infinite() const { return q == 0; }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
  friend bool operator==(const Slope& x, const Slope& y) { return x.p == y.p && x.q == y.q; }
};

std::vector<int> cf_expansion(long long p, long long q);
Slope make_slope(long long p, long long q);
Slope slope_from_cf(const std::vector<int>& cf);

// Relabelling from the tower alphabet back to the class alphabet:
// first exchange a and b if `swap`, then send b to b^-1 if `negate_b`.
struct Substitution {
  bool swap = false;
  bool negate_b = false;

  Letter apply(Letter x) const;
  Word apply(const Word& w) const;
  std::string name() const;
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

// Block words of a positive slope >= 1 (or 1/0) and their lengths.
// w[0] = a, wp[0] = ab, w[i] = w[i-1]^(n_i - 1) wp[i-1], wp[i] = w[i-1]^n_i wp[i-1].
struct BlockTower {
  Slope slope;            // the class slope as requested
  Slope canonical;        // slope after substitution, >= 1 or 1/0
  Substitution substitution;
  std::vector<Word> w, wp;
  std::vector<long long> l, lp;

  int depth() const { return static_cast<int>(w.size()) - 1; }
  const std::vector<int>& cf() const { return canonical.cf; }
  // n_i for 1 <= i <= depth().
  int n(int i) const { return canonical.cf[static_cast<std::size_t>(i - 1)]; }
  const Word& top() const { return w.back(); }
  // The class representative in the original alphabet, inverted after a
  // negation so that its abelianization is exactly (p, q).
  Word representative() const {
    return substitution.negate_b ? invert(substitution.apply(top())) : substitution.apply(top());
  }
};

BlockTower build_blocks(const Slope& slope);
inline BlockTower build_blocks(long long p, long long q) { return build_blocks(make_slope(p, q)); }

// Lengths only; no words are materialised.
struct TowerLengths {
  std::vector<int> cf;
  std::vector<long long> l, lp;
};
TowerLengths tower_lengths(const std::vector<int>& cf);

// Empty when every recurrence and inequality holds. Checked in exact integer
// arithmetic over the index ranges on which each statement is a theorem:
//   l'_i = l_i + l_{i-1} (i >= 1), i + 1 <= l_i,
//   l_i < l'_i < 2 l_i (i >= 1), l'_0 = 2 l_0,
//   n_i l_{i-1} < l_i < (n_i + 1) l_{i-1} (i >= 2), l_1 = (n_1 + 1) l_0,
//   (n_{i-1} + 2) l_{i-1} < (n_{i-1} + 1) l_i (i >= 3), non-strict at i = 2
//   with equality exactly when n_2 = 1.
std::vector<std::string> check_tower_lengths(const TowerLengths& t);
std::vector<std::string> check_tower(const BlockTower& t);

struct DerivationStep {
  Word word;             // on {a, b}, rotated to end with the isolated letter
  Letter isolated;       // the letter that never appears squared cyclically
  int value = 0;         // n: powers of the other letter are n or n + 1
  Word derived;
};

struct DerivationTrace {
  Word input;
  Word cyclic;           // cyclic reduction of input
  Quadrant quadrant = Quadrant::mixed;
  Word relabeled;
  std::vector<DerivationStep> steps;
  bool primitive = false;
  std::string reason;    // why derivation stopped

  std::vector<int> values() const;
};

DerivationTrace derivation_suite(const Word& w);
inline bool is_primitive(const Word& w) { return derivation_suite(w).primitive; }

// Slope of a primitive class; throws PreconditionError otherwise.
Slope slope_of(const Word& w);

// 1/0, 0/1 and every reduced p/q with 1 <= p, q <= cap, ordered by q then p.
std::vector<Slope> enumerate_slopes(int cap);
void for_each_primitive_class(int cap, const std::function<void(const BlockTower&)>& fn);

}  // namespace primstab
