#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkforge/schedule.hpp"
#include "gkforge/subspace.hpp"

namespace gkforge {

/// Test hooks that damage a built state in a controlled way, so the
/// verifiers can demonstrate they actually detect broken invariants.
enum class FaultKind {
  kNone,
  kDropUGenerator,   // removes one monomial generator from an explicit U level
  kShrinkAbsorbed,   // cuts U(level) down by a hyperplane, breaking absorption
};

struct Fault {
  FaultKind kind = FaultKind::kNone;
  int level = -1;
};

/// Which inductive branch produced a level, plus the choices made there.
struct LevelStep {
  int case_id = 0;          // 1, 2 or 3
  int window_exponent = -1; // case 3: the i with n = 2^i - 1
  bool consumed_f = false;  // case 3 with i in the index set
  std::vector<Word> chosen; // the two chosen monomials (cases 2 and 3)
};

/// The per-level output of the inductive construction: at each level n the
/// degree-2^n component splits as H = V ⊕ U, where V is a small monomial
/// space and U absorbs products. V is always a word list. U is kept as an
/// explicit co-monomial space while that stays small; membership in U is
/// always available through the quotient functional (coordinates in the
/// V-word basis), evaluated by contracting power-of-two blocks bottom-up.
class ConstructionState {
 public:
  const Schedule& schedule() const { return schedule_; }
  const Field& field() const { return schedule_.field; }
  int max_power() const { return max_power_; }
  std::int64_t level_degree(int n) const { return std::int64_t{1} << n; }

  const std::vector<Word>& v_words(int n) const;
  GradedSubspace v_space(int n) const;
  int v_dim(int n) const { return static_cast<int>(v_words(n).size()); }
  bool has_explicit_u(int n) const;
  /// True when U(2^n) is exactly the span of all non-V monomials.
  bool plain_level(int n) const;
  const GradedSubspace& u_space(int n) const;  // throws without explicit form
  BigInt u_dim(int n) const;
  const std::optional<GradedSubspace>& f_consumed(int n) const;
  const LevelStep& step_to(int n) const;  // the step that built level n >= 1
  /// Matrix taking level-(n-1) tensor coordinates to level-n coordinates.
  const std::vector<std::vector<FieldElem>>& transition(int n) const;
  std::string provenance_text() const;
  const Fault& fault() const { return fault_; }

  /// Coordinates of a homogeneous degree-2^n element in the v-word basis,
  /// modulo U(2^n); U is exactly the kernel.
  std::vector<FieldElem> v_coords(int n, const Word& w) const;
  std::vector<FieldElem> v_coords(int n, const Poly& p) const;
  bool in_u(int n, const Poly& p) const;

  /// Membership in U(2^m1)H(2^m1) + H(2^m1)U(2^m1) for a homogeneous element
  /// of degree 2^(m1+1); that sum is the kernel of the paired quotient map.
  bool in_window_sum(int m1, const Poly& p) const;
  /// The nonzero pairing witness (row word, column word, value) if any.
  std::optional<std::string> window_sum_witness(int m1, const Poly& p) const;

  Poly lift_from_v(int n, const std::vector<FieldElem>& coords) const;
  Word random_word(int degree, std::mt19937_64& rng) const;
  /// A random sparse element of U(2^n), built by correcting a random
  /// polynomial with its v-coordinates.
  Poly sample_u_element(int n, std::mt19937_64& rng, int terms = 4) const;

  ConstructionState with_fault(const Fault& f) const;

  nlohmann::json to_json() const;
  static ConstructionState from_json(const nlohmann::json& j);

 private:
  friend ConstructionState build(const Schedule&, int);

  ConstructionState(Schedule s, int max_power)
      : schedule_(std::move(s)), max_power_(max_power) {}
  void check_level(int n) const;
  // residue dimension of a word under the shrink fault at a level
  FieldElem fault_residue(int n, const Word& w) const;

  Schedule schedule_;
  int max_power_;
  std::vector<std::vector<Word>> v_words_;
  std::vector<std::optional<GradedSubspace>> u_explicit_;
  std::vector<std::optional<GradedSubspace>> f_consumed_;
  std::vector<LevelStep> steps_;  // steps_[n] built level n+1
  // transitions_[n]: matrix taking level-n tensor coordinates (d_n^2) to
  // level-(n+1) coordinates (d_{n+1}); column order matches the sorted list
  // of two-block concatenations.
  std::vector<std::vector<std::vector<FieldElem>>> transitions_;
  Fault fault_;
};

/// Runs the inductive construction up to V(2^maxPower), U(2^maxPower).
/// Throws std::runtime_error with a witness message when a step cannot be
/// completed (bad provider output, no complement monomials).
ConstructionState build(const Schedule& schedule, int max_power);

struct ConditionResult {
  int condition = 0;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

struct SevenReport {
  int level = 0;
  std::vector<ConditionResult> conditions;
  bool all_pass() const;
};

/// Checks the seven structural conditions at level n (conditions 6 and 7
/// need level n+1 to exist). Never throws on failure; reports carry a
/// re-checkable witness in `detail`.
SevenReport verify_seven(const ConstructionState& st, int n, std::uint64_t seed = 0);

}  // namespace gkforge
