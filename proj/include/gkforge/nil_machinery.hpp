#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gkforge/construction.hpp"
#include "gkforge/poly.hpp"
#include "gkforge/report.hpp"
#include "gkforge/subspace.hpp"

namespace gkforge {

/// One entry of the relabelled listing: the s-th canonical element, renamed
/// with an index i chosen strictly increasingly so that 2^(2^i) dominates
/// 3^(6 deg).
struct EnumeratedElement {
  std::int64_t index = 0;  // i
  Poly element;
  std::int64_t degree = 0;  // t
  BigInt weight_log2() const {  // log2 of the associated weight 4 * 2^(2^i)
    return (BigInt(1) << index) + 2;
  }
  /// Exact decimal when it fits in memory, otherwise the exact power form.
  std::string weight_string() const;
  bool weight_materializable() const { return index <= 16; }
};

/// Deterministic, surjective listing of the nonzero constant-term-free
/// polynomials: by top degree, then by term count, then by support position,
/// then by coefficient pattern. Over the rationals the coefficient patterns
/// per support are infinite, so supports and patterns interleave along
/// antidiagonals, with coefficients drawn from a signed Calkin-Wilf walk.
class CanonicalListing {
 public:
  explicit CanonicalListing(Field field);
  Poly next();

 private:
  void refill();
  Field field_;
  int degree_ = 0;
  std::vector<Poly> block_;       // pending elements of the current degree
  std::size_t block_pos_ = 0;
  std::int64_t diagonal_cap_ = 0;  // rationals: antidiagonal extent per degree
};

/// The exact inequality 2^(2^i) > 3^(6t), decided on bit lengths.
bool weight_dominates(std::int64_t i, std::int64_t t);

std::vector<EnumeratedElement> enumerate_elements(const Field& field, int count);

/// Truncated right ideal generated by shifted copies of a degree-n space:
/// the degree-d component is the sum over k of M(nk) S H(d - nk - n).
class TruncatedRightIdeal {
 public:
  TruncatedRightIdeal(GradedSubspace generators, std::int64_t max_degree);

  std::int64_t period() const { return period_; }
  std::int64_t max_degree() const { return max_degree_; }
  const GradedSubspace& generator_space() const { return generators_; }

  std::vector<std::int64_t> prefix_lengths(std::int64_t d) const;
  /// Membership through a full small-degree materialization (GF(2), 3^d
  /// enumerable); throws std::domain_error past the caps.
  bool component_contains(std::int64_t d, const Poly& p) const;
  std::vector<Poly> component_generators(std::int64_t d) const;  // small degrees
  Poly sample_component_element(std::int64_t d, std::mt19937_64& rng) const;

 private:
  GradedSubspace generators_;
  std::int64_t period_;
  std::int64_t max_degree_;
};

/// Checks the window containment of the truncated right ideal over a scaled
/// schedule, level by level: the base case by unfolding the defining sum, the
/// inductive step through the absorption condition, and end-to-end on
/// sampled elements. Detects injected absorption faults.
Report verify_bwifi(const ConstructionState& st, int i, int max_m, std::uint64_t seed = 0);

struct NilDegreeRecord {
  std::int64_t index = 0;   // i
  std::int64_t degree = 0;  // t
  std::string weight;       // 4 * 2^(2^i), exact decimal or exact power form
  std::string power_degree; // 10 * weight * t, same convention
  std::int64_t first_window_level = 0;
  std::string first_window_degree;
  bool desk_verifiable = false;
  std::string note;
};

/// Symbolic report of the degree at which the listed element's power lies in
/// the ideal; these degrees are astronomically past desk scale, so this is a
/// statement of the constants, never a computation.
NilDegreeRecord nil_degree_report(std::int64_t i, std::int64_t t);

}  // namespace gkforge
