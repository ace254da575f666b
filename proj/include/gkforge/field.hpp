#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace gkforge {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Coefficient domain for the whole run: GF(p) for a prime p, or the
/// rationals. Chosen once and threaded through every value.
class Field {
 public:
  enum class Kind { kPrime, kRational };

  static Field gf(std::int64_t p);
  static Field rationals();

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return kind_ == Kind::kPrime ? p_ : 0; }
  bool operator==(const Field&) const = default;

  std::string describe() const;

 private:
  Kind kind_ = Kind::kPrime;
  std::int64_t p_ = 2;
};

/// A field element. GF(p) values are canonical residues in [0,p); rational
/// values are kept reduced with positive denominator (cpp_rational invariant).
class FieldElem {
 public:
  FieldElem() = default;
  explicit FieldElem(BigRat v) : v_(std::move(v)) {}

  const BigRat& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool operator==(const FieldElem&) const = default;
  bool operator<(const FieldElem& o) const { return v_ < o.v_; }

 private:
  BigRat v_;
};

FieldElem fe_zero(const Field& k);
FieldElem fe_one(const Field& k);
FieldElem fe_from_int(const Field& k, std::int64_t v);
FieldElem fe_add(const Field& k, const FieldElem& a, const FieldElem& b);
FieldElem fe_sub(const Field& k, const FieldElem& a, const FieldElem& b);
FieldElem fe_mul(const Field& k, const FieldElem& a, const FieldElem& b);
FieldElem fe_neg(const Field& k, const FieldElem& a);
FieldElem fe_inv(const Field& k, const FieldElem& a);  // throws on zero
FieldElem fe_div(const Field& k, const FieldElem& a, const FieldElem& b);

/// Parses "7", "-3", or (rationals only) "a/b". Throws std::invalid_argument
/// on malformed input or a literal not valid in the field.
FieldElem fe_parse(const Field& k, std::string_view text);
std::string fe_to_string(const Field& k, const FieldElem& a);

/// 3^n as an exact integer.
BigInt pow3(std::int64_t n);

}  // namespace gkforge
