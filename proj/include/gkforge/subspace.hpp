#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gkforge/field.hpp"
#include "gkforge/matrix.hpp"
#include "gkforge/poly.hpp"
#include "gkforge/word.hpp"

namespace gkforge {

/// One graded component H(n) and its exact size 3^n.
struct GradedIndex {
  int degree = 0;
  BigInt dimension() const { return pow3(degree); }
};

enum class SubspaceRepr { kMonomialSet, kEchelonBasis, kCoMonomial };

enum class ComplementRule { kMonomialLex, kEchelonGreedy };

/// A linear subspace of a single graded component H(n), in one of three
/// representations:
///   - MonomialSet: the span of a finite set of degree-n words;
///   - EchelonBasis: a reduced row-echelon basis over a finite word support;
///   - CoMonomial: every word of degree n except a finite excluded set, plus
///     an echelon "correction" supported inside the excluded set.
/// The co-monomial form is what keeps the machinery tractable when 3^n is
/// astronomical but the space misses H(n) by only a small amount.
class GradedSubspace {
 public:
  static GradedSubspace zero(Field field, int degree);
  static GradedSubspace full(Field field, int degree);
  static GradedSubspace from_monomials(Field field, int degree, std::vector<Word> words);
  static GradedSubspace from_echelon(SupportMatrix basis, int degree);
  static GradedSubspace comonomial(Field field, int degree, std::vector<Word> excluded,
                                   std::optional<SupportMatrix> correction = std::nullopt);

  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  SubspaceRepr repr() const { return repr_; }
  BigInt dimension() const;
  bool is_zero() const { return dimension() == 0; }

  /// MonomialSet accessor; throws unless repr is kMonomialSet.
  const std::vector<Word>& monomial_words() const;
  const SupportMatrix& echelon_basis() const;
  const std::vector<Word>& excluded_words() const;
  const SupportMatrix& correction() const;

  bool contains(const Poly& f) const;
  bool contains_subspace(const GradedSubspace& other) const;
  bool equals(const GradedSubspace& other) const;

  /// A finite generating set (free monomials enumerated only when 3^n is
  /// small; throws otherwise for co-monomial spaces).
  std::vector<Poly> basis_generators() const;

  /// Re-expresses the space as an EchelonBasis. For co-monomial spaces this
  /// enumerates all of M(n) and is capped at degree 10.
  GradedSubspace to_echelon() const;

  std::string describe() const;

 private:
  GradedSubspace(Field field, int degree) : field_(field), degree_(degree) {}
  void normalize_comonomial();

  Field field_;
  int degree_;
  SubspaceRepr repr_ = SubspaceRepr::kMonomialSet;
  std::vector<Word> words_;                  // kMonomialSet (sorted, unique)
  std::optional<SupportMatrix> basis_;       // kEchelonBasis
  std::vector<Word> excluded_;               // kCoMonomial (sorted, unique)
  std::optional<SupportMatrix> correction_;  // kCoMonomial, support inside excluded_

  friend GradedSubspace sum(const GradedSubspace&, const GradedSubspace&);
  friend GradedSubspace intersect(const GradedSubspace&, const GradedSubspace&);
};

/// Span of homogeneous vectors of degree n; picks MonomialSet when every
/// input is a single word. Throws on inhomogeneous input.
GradedSubspace span(const std::vector<Poly>& vectors, int degree, Field field);

GradedSubspace sum(const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace product(const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace complement(const GradedSubspace& a, const GradedSubspace& within,
                          ComplementRule rule = ComplementRule::kMonomialLex);

inline bool contains(const GradedSubspace& a, const Poly& f) { return a.contains(f); }
inline bool contains_sub(const GradedSubspace& a, const GradedSubspace& b) {
  return a.contains_subspace(b);
}

/// All 3^n words of degree n, ascending; capped at degree 10.
std::vector<Word> all_words(int degree);

/// A random element of the space, at most `terms` generators deep.
/// Deterministic for a fixed generator state.
Poly random_element(const GradedSubspace& s, std::mt19937_64& rng, int terms = 3);

}  // namespace gkforge
