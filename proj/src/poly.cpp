#include "gkforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace gkforge {

Poly Poly::monomial(Field field, const Word& w) {
  return monomial(field, w, fe_one(field));
}

Poly Poly::monomial(Field field, const Word& w, const FieldElem& c) {
  Poly p(field);
  p.add_term(w, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  return terms_.rbegin()->first.degree();
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

std::vector<int> Poly::support_degrees() const {
  std::set<int> ds;
  for (const auto& [w, c] : terms_) ds.insert(w.degree());
  return {ds.begin(), ds.end()};
}

FieldElem Poly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? fe_zero(field_) : it->second;
}

void Poly::add_term(const Word& w, const FieldElem& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second = fe_add(field_, it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(field_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, fe_neg(field_, c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(field_);
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_)
      r.add_term(wa * wb, fe_mul(field_, ca, cb));
  return r;
}

Poly Poly::scaled(const FieldElem& c) const {
  Poly r(field_);
  for (const auto& [w, cw] : terms_) r.add_term(w, fe_mul(field_, cw, c));
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = fe_to_string(field_, c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    if (cs != "1")
      out += cs + "*" + w.str();
    else
      out += w.str();
  }
  return out;
}

std::vector<std::pair<int, Poly>> homogeneous_components(const Poly& f) {
  std::map<int, Poly> parts;
  for (const auto& [w, c] : f.terms()) {
    auto it = parts.find(w.degree());
    if (it == parts.end()) it = parts.emplace(w.degree(), Poly(f.field())).first;
    it->second.add_term(w, c);
  }
  std::vector<std::pair<int, Poly>> out;
  out.reserve(parts.size());
  for (auto& [d, p] : parts) out.emplace_back(d, std::move(p));
  return out;
}

Poly parse_poly(const Field& field, std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);

  Poly out(field);
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = (s[i] == '-');
      ++i;
    } else if (!first) {
      throw std::invalid_argument("expected + or - between terms");
    }
    first = false;
    if (i >= s.size()) throw std::invalid_argument("dangling sign");

    // optional coefficient literal
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
      ++j;
    FieldElem c = fe_one(field);
    bool have_coeff = j > i;
    if (have_coeff) {
      c = fe_parse(field, std::string_view(s).substr(i, j - i));
      i = j;
      if (i < s.size() && s[i] == '*') ++i;
    }

    std::size_t k = i;
    while (k < s.size() && (s[k] == 'x' || s[k] == 'y' || s[k] == 'z')) ++k;
    if (k == i) throw std::invalid_argument("expected a word over x,y,z");
    Word w = Word::parse(std::string_view(s).substr(i, k - i));
    i = k;

    if (negative) c = fe_neg(field, c);
    out.add_term(w, c);
  }
  return out;
}

}  // namespace gkforge
