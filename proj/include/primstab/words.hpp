#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace primstab {

// Letters of F2 = <a, b>. The low bit distinguishes a letter from its inverse.
enum class Letter : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

constexpr Letter inverse(Letter x) { return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 1u); }
constexpr bool is_a_family(Letter x) { return static_cast<std::uint8_t>(x) < 2; }
constexpr bool is_inverse_letter(Letter x) { return static_cast<std::uint8_t>(x) & 1u; }
char to_char(Letter x);
Letter letter_from_char(char c);

// Freely reduced word. Every constructor reduces its input.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters);
  explicit Word(std::string_view s);
  Word(std::initializer_list<Letter> letters);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  struct Trusted {};
  Word(Trusted, std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  friend Word reduce(std::span<const Letter>);

  std::vector<Letter> letters_;
};

Word reduce(std::span<const Letter> letters);
Word compose(const Word& u, const Word& v);
inline Word operator*(const Word& u, const Word& v) { return compose(u, v); }
Word invert(const Word& w);
Word power(const Word& w, long long n);

bool is_cyclically_reduced(const Word& w);
Word cyclic_reduce(const Word& w);

// s_{k+1}..s_n s_1..s_k; requires a cyclically reduced w and 0 <= k <= |w|.
Word rotate(const Word& w, std::size_t k);

enum class Reading { linear, cyclic };
Word subword(const Word& w, std::size_t offset, std::size_t length, Reading reading = Reading::linear);

struct AbelianImage {
  long long p = 0;  // exponent sum of a
  long long q = 0;  // exponent sum of b
  friend bool operator==(const AbelianImage&, const AbelianImage&) = default;
};
AbelianImage abelianize(const Word& w);

enum class Quadrant { ab, aB, Ab, AB, mixed };
std::string_view to_string(Quadrant q);

// Quadrant of the letters used, plus the word relabelled onto {a, b}.
// For a mixed word the relabelled word is empty.
struct AlphabetClass {
  Quadrant quadrant = Quadrant::mixed;
  Word relabeled;
};
AlphabetClass alphabet_class(const Word& w);

}  // namespace primstab
