#include "gkforge/dense_gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace gkforge {

DenseGf2::DenseGf2(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw std::out_of_range("dense engine limited to degree <= 10");
  BigInt c = pow3(degree);
  cols_ = static_cast<std::size_t>(c);
  limbs_ = (cols_ + 63) / 64;
}

std::size_t DenseGf2::column_of(const Word& w) {
  return static_cast<std::size_t>(w.index());
}

std::vector<std::uint64_t> DenseGf2::row_of(const Poly& p) const {
  std::vector<std::uint64_t> row(limbs_, 0);
  if (p.is_zero()) return row;
  if (p.field().characteristic() != 2)
    throw std::invalid_argument("dense engine works over GF(2)");
  for (const auto& [w, c] : p.terms()) {
    if (w.degree() != degree_)
      throw std::invalid_argument("dense engine row must be homogeneous of the engine degree");
    std::size_t col = column_of(w);
    row[col / 64] ^= (std::uint64_t{1} << (col % 64));
  }
  return row;
}

std::vector<std::uint64_t> DenseGf2::reduce(std::vector<std::uint64_t> row) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::size_t p = pivots_[r];
    if (row[p / 64] & (std::uint64_t{1} << (p % 64)))
      for (std::size_t l = 0; l < limbs_; ++l) row[l] ^= rows_[r][l];
  }
  return row;
}

bool DenseGf2::insert(std::vector<std::uint64_t> row) {
  row = reduce(std::move(row));
  std::size_t piv = cols_;
  for (std::size_t l = 0; l < limbs_ && piv == cols_; ++l)
    if (row[l] != 0) {
      unsigned bit = static_cast<unsigned>(__builtin_ctzll(row[l]));
      piv = l * 64 + bit;
    }
  if (piv == cols_) return false;
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (rows_[r][piv / 64] & (std::uint64_t{1} << (piv % 64)))
      for (std::size_t l = 0; l < limbs_; ++l) rows_[r][l] ^= row[l];
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  rows_.insert(rows_.begin() + pos, std::move(row));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool DenseGf2::insert(const Poly& p) { return insert(row_of(p)); }

bool DenseGf2::contains(const Poly& p) const { return contains_row(row_of(p)); }

bool DenseGf2::contains_row(std::vector<std::uint64_t> row) const {
  row = reduce(std::move(row));
  return std::all_of(row.begin(), row.end(), [](std::uint64_t l) { return l == 0; });
}

std::size_t DenseGf2::intersection_dim(const DenseGf2& a, const DenseGf2& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  DenseGf2 joint(a.degree());
  for (const auto& r : a.rows_) joint.insert(r);
  for (const auto& r : b.rows_) joint.insert(r);
  return a.rank() + b.rank() - joint.rank();
}

}  // namespace gkforge
