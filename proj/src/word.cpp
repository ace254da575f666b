#include "gkforge/word.hpp"

#include <stdexcept>

namespace gkforge {

Word Word::parse(std::string_view s) {
  Word w;
  w.s_.reserve(s.size());
  for (char c : s) {
    if (c != 'x' && c != 'y' && c != 'z')
      throw std::invalid_argument("word letters must be x, y or z");
    w.s_.push_back(c);
  }
  return w;
}

Word Word::from_index(int degree, const BigInt& k) {
  if (degree < 0) throw std::out_of_range("negative degree");
  if (k < 0 || k >= pow3(degree)) throw std::out_of_range("word index out of range");
  std::string s(static_cast<std::size_t>(degree), 'x');
  BigInt v = k;
  for (int i = degree - 1; i >= 0; --i) {
    int d = static_cast<int>(v % 3);
    v /= 3;
    s[static_cast<std::size_t>(i)] = static_cast<char>('x' + d);
  }
  Word w;
  w.s_ = std::move(s);
  return w;
}

Word Word::repeated(char letter, int count) {
  if (letter != 'x' && letter != 'y' && letter != 'z')
    throw std::invalid_argument("word letters must be x, y or z");
  if (count < 0) throw std::out_of_range("negative count");
  Word w;
  w.s_.assign(static_cast<std::size_t>(count), letter);
  return w;
}

BigInt Word::index() const {
  BigInt v = 0;
  for (char c : s_) v = v * 3 + (c - 'x');
  return v;
}

Word Word::operator*(const Word& o) const {
  Word w;
  w.s_ = s_ + o.s_;
  return w;
}

Word Word::slice(int pos, int len) const {
  if (pos < 0 || len < 0 || pos + len > degree())
    throw std::out_of_range("word slice out of range");
  Word w;
  w.s_ = s_.substr(static_cast<std::size_t>(pos), static_cast<std::size_t>(len));
  return w;
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (s_.size() != o.s_.size()) return s_.size() <=> o.s_.size();
  int c = s_.compare(o.s_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace gkforge
