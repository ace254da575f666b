#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "gkforge/construction.hpp"
#include "gkforge/report.hpp"
#include "gkforge/subspace.hpp"

namespace gkforge {

/// Binary expansion of j with ascending bit exponents, plus the prefix and
/// suffix partial sums used to place blocks inside a degree-j word.
struct BinaryDecomposition {
  std::int64_t j = 0;
  std::vector<int> bits;  // p0 < p1 < ... < pn

  static BinaryDecomposition of(std::int64_t j);
  int blocks() const { return static_cast<int>(bits.size()); }
  std::int64_t prefix(int k) const;  // sum of 2^{p_i} for i < k
  std::int64_t suffix(int k) const;  // sum of 2^{p_i} for i > k
};

/// One summand H(left) U(2^level) H(right).
struct Sandwich {
  std::int64_t left = 0;
  int level = 0;
  std::int64_t right = 0;
};

struct SRSpace {
  std::optional<GradedSubspace> space;  // co-monomial form (monomial-mode only)
  std::vector<Sandwich> summands;
  BigInt dim;
};

/// The degree-j spaces assembled from the binary expansion: two ordered
/// products of the level spaces (ascending and descending) and their two
/// complementary absorbed sums. Cached per degree; safe for concurrent reads
/// with a fill-once lock.
class DecompositionTables {
 public:
  explicit DecompositionTables(const ConstructionState& st) : st_(&st) {}

  const ConstructionState& state() const { return *st_; }

  const std::vector<Word>& w_words(std::int64_t j) const;  // ascending product
  const std::vector<Word>& q_words(std::int64_t j) const;  // descending product
  GradedSubspace w_of(std::int64_t j) const;
  GradedSubspace q_of(std::int64_t j) const;
  SRSpace s_of(std::int64_t j) const;
  SRSpace r_of(std::int64_t j) const;

  /// Membership via the per-block quotient contraction; works in every mode
  /// and never materializes the space.
  bool in_s(std::int64_t j, const Poly& p) const;
  bool in_r(std::int64_t j, const Poly& p) const;

  Report verify_direct_sum(std::int64_t j, bool inject_fault = false) const;
  Report verify_recursion(std::int64_t j, int t) const;
  /// R(j)H(t) ⊆ R(j+t) and H(t)S(j) ⊆ S(j+t), checked one letter at a time.
  Report verify_absorption(std::int64_t j, std::int64_t t) const;

 private:
  void require_built(std::int64_t j) const;
  bool plain_mode(std::int64_t j) const;  // all touched levels co-monomial without corrections
  std::vector<Sandwich> s_summands(std::int64_t j) const;
  std::vector<Sandwich> r_summands(std::int64_t j) const;
  // contraction of per-block coordinates into the product tensor
  bool blocks_contract_to_zero(const std::vector<Sandwich>& layout, std::int64_t j,
                               const Poly& p) const;

  const ConstructionState* st_;
  mutable std::mutex mu_;
  mutable std::map<std::int64_t, std::vector<Word>> w_cache_;
  mutable std::map<std::int64_t, std::vector<Word>> q_cache_;
};

}  // namespace gkforge
