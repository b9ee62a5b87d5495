#include "primstab/words.hpp"

#include <algorithm>

#include "primstab/errors.hpp"

namespace primstab {

char to_char(Letter x) {
  constexpr char table[] = {'a', 'A', 'b', 'B'};
  return table[static_cast<std::uint8_t>(x)];
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'a': return Letter::a;
    case 'A': return Letter::A;
    case 'b': return Letter::b;
    case 'B': return Letter::B;
  }
  throw PreconditionError(std::string("invalid letter '") + c + "'");
}

static std::vector<Letter> parse_letters(std::string_view s) {
  std::vector<Letter> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(letter_from_char(c));
  return out;
}

Word::Word(std::span<const Letter> letters) : Word(reduce(letters)) {}
Word::Word(std::string_view s) : Word(reduce(parse_letters(s))) {}
Word::Word(std::initializer_list<Letter> letters)
    : Word(reduce(std::span<const Letter>(letters.begin(), letters.size()))) {}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter x : letters_) s.push_back(to_char(x));
  return s;
}

Word reduce(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter x : letters) {
    if (!stack.empty() && stack.back() == inverse(x))
      stack.pop_back();
    else
      stack.push_back(x);
  }
  return Word(Word::Trusted{}, std::move(stack));
}

Word compose(const Word& u, const Word& v) {
  std::vector<Letter> all(u.letters().begin(), u.letters().end());
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return reduce(all);
}

Word invert(const Word& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : out) x = inverse(x);
  return Word(out);
}

Word power(const Word& w, long long n) {
  Word base = n < 0 ? invert(w) : w;
  std::vector<Letter> out;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i)
    out.insert(out.end(), base.letters().begin(), base.letters().end());
  return Word(out);
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w.front() != inverse(w.back());
}

Word cyclic_reduce(const Word& w) {
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == inverse(w[j - 1])) {
    ++i;
    --j;
  }
  return Word(w.letters().subspan(i, j - i));
}

Word rotate(const Word& w, std::size_t k) {
  if (k > w.size())
    throw std::out_of_range("rotation " + std::to_string(k) + " outside [0, " +
                            std::to_string(w.size()) + "]");
  if (!is_cyclically_reduced(w)) throw PreconditionError("rotation of a word that is not cyclically reduced");
  std::vector<Letter> out(w.letters().begin() + static_cast<std::ptrdiff_t>(k), w.letters().end());
  out.insert(out.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(k));
  return Word(out);
}

Word subword(const Word& w, std::size_t offset, std::size_t length, Reading reading) {
  const std::size_t n = w.size();
  if (reading == Reading::linear) {
    if (offset > n || length > n - offset) throw std::out_of_range("subword outside the word");
    return Word(w.letters().subspan(offset, length));
  }
  if (n == 0 ? (offset != 0 || length != 0) : (offset >= n || length > n))
    throw std::out_of_range("cyclic subword outside the word");
  std::vector<Letter> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(w[(offset + i) % n]);
  return Word(out);
}

AbelianImage abelianize(const Word& w) {
  AbelianImage r;
  for (Letter x : w.letters()) {
    long long s = is_inverse_letter(x) ? -1 : 1;
    (is_a_family(x) ? r.p : r.q) += s;
  }
  return r;
}

std::string_view to_string(Quadrant q) {
  switch (q) {
    case Quadrant::ab: return "ab";
    case Quadrant::aB: return "aB";
    case Quadrant::Ab: return "Ab";
    case Quadrant::AB: return "AB";
    case Quadrant::mixed: return "mixed";
  }
  return "mixed";
}

AlphabetClass alphabet_class(const Word& w) {
  bool seen[4] = {false, false, false, false};
  for (Letter x : w.letters()) seen[static_cast<int>(x)] = true;
  if ((seen[0] && seen[1]) || (seen[2] && seen[3])) return {};
  const bool inv_a = seen[1], inv_b = seen[3];
  Quadrant q = inv_a ? (inv_b ? Quadrant::AB : Quadrant::Ab) : (inv_b ? Quadrant::aB : Quadrant::ab);
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  for (Letter& x : out) x = is_a_family(x) ? Letter::a : Letter::b;
  return {q, Word(out)};
}

}  // namespace primstab
