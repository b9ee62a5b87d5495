#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "primstab/primitive.hpp"

namespace primstab {

enum class BlockRelation { prefix, suffix, both };
std::string_view to_string(BlockRelation r);

// A rotation of w_r written as a product of x = rot_k(w_i) and y = rot_j(w'_i),
// where x is a prefix or suffix of y.
struct AdaptedRewriting {
  std::size_t j = 0;
  std::size_t rotation = 0;           // rot_rotation(w_r) = product of blocks
  BlockRelation relation = BlockRelation::prefix;
  std::vector<bool> blocks;           // true for y
  Word x, y;
};

// First j in rotation order, then first rotation of w_r admitting the factorisation.
// Throws PreconditionError for i or k out of range and InternalViolation if no
// witness exists.
AdaptedRewriting adapted_permutation(const BlockTower& t, int i, std::size_t k);

struct MagicWitness {
  bool exact = true;                  // otherwise the last letter was changed
  std::size_t rotation = 0;           // u or its fix equals rot_rotation(w_i)
  Letter fixed_last = Letter::a;      // replacement letter when !exact
};

// |u| = l_i and u a cyclic subword of w_r. Exact matches take precedence over
// last-letter fixes; within each kind the first rotation wins.
MagicWitness classify_magic_subword(const BlockTower& t, int i, const Word& u);

struct BlockCount {
  std::size_t count = 0;              // whole blocks of the adapted rewriting inside u
  double alpha = 0;                   // |u| / l_i
  double guaranteed = 0;              // (alpha - 4) / 2
};

// u is the cyclic subword of w_r of the given length starting at offset.
// Requires |u| > 4 l_i and |u| <= l_r.
BlockCount count_block_occurrences(const BlockTower& t, int i, std::size_t k, std::size_t offset,
                                   std::size_t length);
// Counts whole blocks of a precomputed rewriting inside a window of w_r.
BlockCount count_block_occurrences(const AdaptedRewriting& r, std::size_t l_top, std::size_t l_i, std::size_t offset,
                                   std::size_t length);
// Locates u at its first cyclic occurrence in w_r.
BlockCount count_block_occurrences(const Word& u, const BlockTower& t, int i, std::size_t k);

// First cyclic offset of u in w, or npos.
std::size_t find_cyclic(const Word& w, const Word& u);

struct LemmaSuiteResult {
  std::string suite;
  std::size_t towers = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;   // first few failure descriptions
};

// Suites: "recurrences", "magic-len", "perm-cycl", "bloc". Exhaustive over every
// tower with l_r <= max_block_len.
LemmaSuiteResult run_lemma_suite(const std::string& suite, long long max_block_len);
std::vector<BlockTower> towers_up_to(long long max_block_len);

}  // namespace primstab
