#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "gkforge/field.hpp"

namespace gkforge {

/// A monomial over the alphabet {x,y,z}: a (possibly empty) word. Words of
/// degree n correspond to integers in [0,3^n) by reading letters base 3 with
/// x=0, y=1, z=2; that encoding agrees with lexicographic order within a
/// degree.
class Word {
 public:
  Word() = default;

  /// Parses a string over "xyz". Throws std::invalid_argument on other chars.
  static Word parse(std::string_view s);
  static Word from_index(int degree, const BigInt& k);
  static Word repeated(char letter, int count);

  int degree() const { return static_cast<int>(s_.size()); }
  char letter(int i) const { return s_[static_cast<std::size_t>(i)]; }
  BigInt index() const;

  Word operator*(const Word& o) const;  // concatenation
  Word slice(int pos, int len) const;

  const std::string& str() const { return s_; }
  bool operator==(const Word&) const = default;
  // Degree first, then lexicographic with x<y<z.
  std::strong_ordering operator<=>(const Word& o) const;

 private:
  std::string s_;
};

inline BigInt word_index(const Word& w) { return w.index(); }
inline Word word_from_index(int degree, const BigInt& k) {
  return Word::from_index(degree, k);
}

}  // namespace gkforge
