#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkforge/field.hpp"
#include "gkforge/word.hpp"

namespace gkforge {

/// A noncommutative polynomial in x,y,z: a finite Word -> coefficient map
/// with no zero coefficients stored. Terms iterate in degree-then-lex order.
class Poly {
 public:
  explicit Poly(Field field) : field_(field) {}
  static Poly zero(Field field) { return Poly(field); }
  static Poly monomial(Field field, const Word& w);
  static Poly monomial(Field field, const Word& w, const FieldElem& c);

  const Field& field() const { return field_; }
  const std::map<Word, FieldElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Max degree present. Throws std::domain_error on the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Degrees occurring in the support, ascending.
  std::vector<int> support_degrees() const;

  FieldElem coeff(const Word& w) const;
  void add_term(const Word& w, const FieldElem& c);  // accumulates, drops zeros

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;  // concatenation convolution
  Poly scaled(const FieldElem& c) const;

  bool operator==(const Poly& o) const {
    return field_ == o.field_ && terms_ == o.terms_;
  }

  std::string to_string() const;

 private:
  Field field_;
  std::map<Word, FieldElem> terms_;
};

inline Poly poly_mul(const Poly& f, const Poly& g) { return f * g; }

/// Splits into homogeneous pieces, ascending degree; zero yields an empty list.
std::vector<std::pair<int, Poly>> homogeneous_components(const Poly& f);

/// Parses signed terms "c*w" or "w" separated by + / -; "*" is optional and
/// whitespace is ignored. Coefficients are integers for GF(p) and "a/b" for
/// the rationals. Throws std::invalid_argument on syntax errors.
Poly parse_poly(const Field& field, std::string_view text);

}  // namespace gkforge
