#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "gkforge/construction.hpp"
#include "gkforge/decomposition.hpp"
#include "gkforge/report.hpp"

namespace gkforge {

struct EMembershipWitness {
  std::int64_t n = 0;  // component degree
  int m = 0;           // 2^m <= n < 2^{m+1}
  std::int64_t offset = 0;
  Word left, right;    // the flanking monomials
  Word word;           // the supporting word that escapes
  Word forbidden;      // the degree-2^{m+2} product exposing it
};

struct GrowthRow {
  std::int64_t n = 0;
  BigInt d;           // dim H(n)/E(n)
  BigInt cumulative;  // running sum of d
  bool bound_ok = true;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  double slope = 0.0;
  std::string caveat;
};

/// The homogeneous two-sided ideal E, defined degreewise by the window
/// containment condition. At desk scale every U level is the span of all
/// non-V monomials, and a word lies outside E(n) exactly when it occurs as a
/// factor of a forbidden word (a concatenation of two V-words at the window
/// level). That factor criterion is the fast path; the generator path
/// re-derives membership by contracting flanking blocks against the level
/// quotients, universally over the free positions.
class IdealE {
 public:
  explicit IdealE(const ConstructionState& st) : st_(&st) {}

  const ConstructionState& state() const { return *st_; }

  static int window_exponent(std::int64_t n);  // m with 2^m <= n < 2^{m+1}
  int required_level(std::int64_t n) const { return window_exponent(n) + 1; }
  std::int64_t window_degree(std::int64_t n) const {
    return std::int64_t{4} << window_exponent(n);
  }

  const std::vector<Word>& forbidden_words(int m1) const;
  const std::vector<Word>& factor_set(std::int64_t n) const;

  bool word_in_e(std::int64_t n, const Word& w) const;  // fast path
  bool word_in_e_generator(std::int64_t n, const Word& w) const;
  bool word_in_e_dense(std::int64_t n, const Word& w) const;  // window <= 8, GF(2)
  std::vector<Word> factor_set_generator(std::int64_t n) const;

  /// Componentwise membership for any element with zero constant term.
  std::pair<bool, std::optional<EMembershipWitness>> membership(const Poly& r) const;
  bool revalidate(const EMembershipWitness& w, const Poly& r) const;

  GradedSubspace e_subspace(std::int64_t n) const;
  BigInt quotient_dim(std::int64_t n) const;

  Report verify_ideal(std::int64_t n, bool inject_fault = false) const;

  struct Sufficient {
    bool hypothesis = false;
    std::int64_t failing_t = -1;
    bool member = false;
  };
  Sufficient sufficient_condition(const Poly& r, std::int64_t n,
                                  const DecompositionTables& tables) const;
  /// The union over t of W(t)Q(n-t) word products: the complement co-support
  /// of the intersection hypothesis space.
  std::vector<Word> kernel_excluded(std::int64_t n, const DecompositionTables& tables) const;

  GrowthReport growth_table(std::int64_t max_n) const;
  static double gk_estimate(const GrowthReport& rep);

  struct NonNilWitness {
    Word word;                  // a V(2^m) monomial outside E
    std::vector<Word> factors;  // its split into degree-2 V-words
    Word right;                 // completion with product in V(2^{m+2})
    Word product;
  };
  NonNilWitness nonnilpotence_witness(int m) const;

 private:
  // exact universal check: does some H(j) r H(...) flank escape the window sum
  bool word_escapes_at_offset(std::int64_t n, const Word& w, std::int64_t j) const;
  bool poly_in_e_contraction(std::int64_t n, const Poly& r_n) const;
  void require_window(std::int64_t n) const;

  const ConstructionState* st_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<Word>> forbidden_cache_;
  mutable std::map<std::int64_t, std::vector<Word>> factor_cache_;
};

}  // namespace gkforge
