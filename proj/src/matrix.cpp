#include "gkforge/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace gkforge {

SupportMatrix::SupportMatrix(Field field, std::vector<Word> support)
    : field_(field), support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
}

std::optional<std::size_t> SupportMatrix::column_of(const Word& w) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), w);
  if (it == support_.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

std::vector<FieldElem> SupportMatrix::coords(const Poly& p) const {
  std::vector<FieldElem> v(support_.size(), fe_zero(field_));
  for (const auto& [w, c] : p.terms()) {
    auto col = column_of(w);
    if (!col) throw std::invalid_argument("polynomial term off the support");
    v[*col] = c;
  }
  return v;
}

Poly SupportMatrix::to_poly(const std::vector<FieldElem>& row) const {
  Poly p(field_);
  for (std::size_t i = 0; i < row.size() && i < support_.size(); ++i)
    if (!row[i].is_zero()) p.add_term(support_[i], row[i]);
  return p;
}

std::vector<Poly> SupportMatrix::basis_polys() const {
  std::vector<Poly> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(to_poly(r));
  return out;
}

std::vector<FieldElem> SupportMatrix::reduce(std::vector<FieldElem> v) const {
  if (v.size() != support_.size()) throw std::invalid_argument("bad vector width");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const FieldElem& c = v[pivots_[r]];
    if (c.is_zero()) continue;
    for (std::size_t j = pivots_[r]; j < v.size(); ++j)
      if (!rows_[r][j].is_zero())
        v[j] = fe_sub(field_, v[j], fe_mul(field_, c, rows_[r][j]));
  }
  return v;
}

bool SupportMatrix::contains(const std::vector<FieldElem>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const FieldElem& c) { return c.is_zero(); });
}

bool SupportMatrix::contains(const Poly& p) const {
  for (const auto& [w, c] : p.terms())
    if (!column_of(w)) return false;
  return contains(coords(p));
}

bool SupportMatrix::insert(std::vector<FieldElem> v) {
  v = reduce(std::move(v));
  std::size_t piv = v.size();
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) {
      piv = j;
      break;
    }
  if (piv == v.size()) return false;
  FieldElem inv = fe_inv(field_, v[piv]);
  for (std::size_t j = piv; j < v.size(); ++j)
    if (!v[j].is_zero()) v[j] = fe_mul(field_, v[j], inv);
  // eliminate the new pivot from existing rows
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const FieldElem c = rows_[r][piv];
    if (c.is_zero()) continue;
    for (std::size_t j = piv; j < v.size(); ++j)
      if (!v[j].is_zero())
        rows_[r][j] = fe_sub(field_, rows_[r][j], fe_mul(field_, c, v[j]));
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool SupportMatrix::insert(const Poly& p) { return insert(coords(p)); }

bool SupportMatrix::operator==(const SupportMatrix& o) const {
  return field_ == o.field_ && support_ == o.support_ && rows_ == o.rows_;
}

SupportMatrix intersect_rows(const SupportMatrix& a, const SupportMatrix& b) {
  if (!(a.support() == b.support()))
    throw std::invalid_argument("intersection requires a common support");
  const Field& k = a.field();
  std::size_t n = a.support().size();
  // Zassenhaus: rows (v|v) for v in A, (w|0) for w in B; the right halves of
  // rows whose left half eliminated to zero span the intersection.
  std::vector<std::vector<FieldElem>> work;
  for (const auto& v : a.rows()) {
    std::vector<FieldElem> r(2 * n, fe_zero(k));
    for (std::size_t j = 0; j < n; ++j) r[j] = r[n + j] = v[j];
    work.push_back(std::move(r));
  }
  for (const auto& w : b.rows()) {
    std::vector<FieldElem> r(2 * n, fe_zero(k));
    for (std::size_t j = 0; j < n; ++j) r[j] = w[j];
    work.push_back(std::move(r));
  }
  // forward elimination on the doubled rows
  std::vector<std::size_t> pivcols;
  std::vector<std::vector<FieldElem>> rows;
  for (auto& r : work) {
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const FieldElem c = r[pivcols[t]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (!rows[t][j].is_zero())
          r[j] = fe_sub(k, r[j], fe_mul(k, c, rows[t][j]));
    }
    std::size_t piv = 2 * n;
    for (std::size_t j = 0; j < 2 * n; ++j)
      if (!r[j].is_zero()) {
        piv = j;
        break;
      }
    if (piv == 2 * n) continue;
    FieldElem inv = fe_inv(k, r[piv]);
    for (std::size_t j = piv; j < 2 * n; ++j)
      if (!r[j].is_zero()) r[j] = fe_mul(k, r[j], inv);
    rows.push_back(std::move(r));
    pivcols.push_back(piv);
  }
  SupportMatrix out(k, a.support());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (pivcols[t] < n) continue;  // left half nonzero
    out.insert(std::vector<FieldElem>(rows[t].begin() + static_cast<std::ptrdiff_t>(n),
                                      rows[t].end()));
  }
  return out;
}

}  // namespace gkforge
