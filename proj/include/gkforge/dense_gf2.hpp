#pragma once

#include <cstdint>
#include <vector>

#include "gkforge/poly.hpp"
#include "gkforge/word.hpp"

namespace gkforge {

/// Dense row-echelon engine over GF(2) on the full coordinate space of one
/// graded component H(n), bit-packed 64 columns per limb. Only sensible for
/// n <= 10 (3^10 = 59049 columns); used as the brute-force oracle in tests
/// and for the tiny-degree cross-checks.
class DenseGf2 {
 public:
  static constexpr int kMaxDegree = 10;

  explicit DenseGf2(int degree);

  int degree() const { return degree_; }
  std::size_t columns() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  static std::size_t column_of(const Word& w);

  std::vector<std::uint64_t> row_of(const Poly& p) const;  // GF(2) polys only
  bool insert(std::vector<std::uint64_t> row);             // true if rank grew
  bool insert(const Poly& p);
  bool contains(const Poly& p) const;
  bool contains_row(std::vector<std::uint64_t> row) const;

  /// dim(span(a) ∩ span(b)) via rank(a) + rank(b) - rank(a ∪ b).
  static std::size_t intersection_dim(const DenseGf2& a, const DenseGf2& b);

 private:
  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> row) const;

  int degree_;
  std::size_t cols_;
  std::size_t limbs_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace gkforge
