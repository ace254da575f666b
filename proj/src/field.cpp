#include "gkforge/field.hpp"

#include <stdexcept>

namespace gkforge {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

BigInt mod_reduce(const BigInt& v, std::int64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace

Field Field::gf(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  Field k;
  k.kind_ = Kind::kPrime;
  k.p_ = p;
  return k;
}

Field Field::rationals() {
  Field k;
  k.kind_ = Kind::kRational;
  k.p_ = 0;
  return k;
}

std::string Field::describe() const {
  if (kind_ == Kind::kRational) return "Q";
  return "GF(" + std::to_string(p_) + ")";
}

FieldElem fe_zero(const Field&) { return FieldElem(BigRat(0)); }

FieldElem fe_one(const Field&) { return FieldElem(BigRat(1)); }

FieldElem fe_from_int(const Field& k, std::int64_t v) {
  if (k.kind() == Field::Kind::kPrime)
    return FieldElem(BigRat(mod_reduce(BigInt(v), k.characteristic())));
  return FieldElem(BigRat(v));
}

FieldElem fe_add(const Field& k, const FieldElem& a, const FieldElem& b) {
  BigRat s = a.value() + b.value();
  if (k.kind() == Field::Kind::kPrime)
    return FieldElem(BigRat(mod_reduce(numerator(s), k.characteristic())));
  return FieldElem(std::move(s));
}

FieldElem fe_sub(const Field& k, const FieldElem& a, const FieldElem& b) {
  return fe_add(k, a, fe_neg(k, b));
}

FieldElem fe_mul(const Field& k, const FieldElem& a, const FieldElem& b) {
  BigRat s = a.value() * b.value();
  if (k.kind() == Field::Kind::kPrime)
    return FieldElem(BigRat(mod_reduce(numerator(s), k.characteristic())));
  return FieldElem(std::move(s));
}

FieldElem fe_neg(const Field& k, const FieldElem& a) {
  if (k.kind() == Field::Kind::kPrime)
    return FieldElem(BigRat(mod_reduce(-numerator(a.value()), k.characteristic())));
  return FieldElem(-a.value());
}

FieldElem fe_inv(const Field& k, const FieldElem& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  if (k.kind() == Field::Kind::kRational) return FieldElem(1 / a.value());
  // extended Euclid on the residue
  std::int64_t p = k.characteristic();
  std::int64_t v = static_cast<std::int64_t>(numerator(a.value()));
  std::int64_t t = 0, nt = 1, r = p, nr = v;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return FieldElem(BigRat(t));
}

FieldElem fe_div(const Field& k, const FieldElem& a, const FieldElem& b) {
  return fe_mul(k, a, fe_inv(k, b));
}

FieldElem fe_parse(const Field& k, std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty coefficient literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      BigInt n{std::string(text)};
      if (k.kind() == Field::Kind::kPrime)
        return FieldElem(BigRat(mod_reduce(n, k.characteristic())));
      return FieldElem(BigRat(n));
    }
    if (k.kind() == Field::Kind::kPrime)
      throw std::invalid_argument("fractional literal in a prime field");
    BigInt n{std::string(text.substr(0, slash))};
    BigInt d{std::string(text.substr(slash + 1))};
    if (d == 0) throw std::invalid_argument("zero denominator");
    return FieldElem(BigRat(n, d));
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument("bad coefficient literal: " + std::string(text));
  }
}

std::string fe_to_string(const Field& k, const FieldElem& a) {
  if (k.kind() == Field::Kind::kPrime) return numerator(a.value()).str();
  if (denominator(a.value()) == 1) return numerator(a.value()).str();
  return numerator(a.value()).str() + "/" + denominator(a.value()).str();
}

BigInt pow3(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("negative exponent");
  BigInt r = 1;
  BigInt b = 3;
  std::int64_t e = n;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace gkforge
