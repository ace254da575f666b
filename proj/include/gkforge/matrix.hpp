#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gkforge/field.hpp"
#include "gkforge/poly.hpp"
#include "gkforge/word.hpp"

namespace gkforge {

/// Reduced row echelon form over a fixed, ordered word support. Columns are
/// the support words in degree-lex order; pivots are chosen smallest column
/// first, so every operation is deterministic.
class SupportMatrix {
 public:
  SupportMatrix(Field field, std::vector<Word> support);

  const Field& field() const { return field_; }
  const std::vector<Word>& support() const { return support_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<FieldElem>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  std::optional<std::size_t> column_of(const Word& w) const;

  /// Coordinate vector of a polynomial; throws if a term falls off-support.
  std::vector<FieldElem> coords(const Poly& p) const;
  Poly to_poly(const std::vector<FieldElem>& row) const;
  std::vector<Poly> basis_polys() const;

  /// Residue of a vector after elimination against the current rows.
  std::vector<FieldElem> reduce(std::vector<FieldElem> v) const;
  bool contains(const std::vector<FieldElem>& v) const;
  bool contains(const Poly& p) const;

  /// Inserts a vector, keeping RREF. Returns true when the rank grew.
  bool insert(std::vector<FieldElem> v);
  bool insert(const Poly& p);

  bool operator==(const SupportMatrix& o) const;

 private:
  Field field_;
  std::vector<Word> support_;
  std::vector<std::vector<FieldElem>> rows_;  // RREF, pivot columns increasing
  std::vector<std::size_t> pivots_;
};

/// Zassenhaus-style intersection of two row spaces over a common support.
SupportMatrix intersect_rows(const SupportMatrix& a, const SupportMatrix& b);

}  // namespace gkforge
