#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gkforge/field.hpp"
#include "gkforge/subspace.hpp"

namespace gkforge {

/// The window set: levels n lying in some interval [2^i - i - 1, 2^i - 1] for
/// i >= onset. Intervals are kept only when separated from the previously
/// kept one by a gap, so that each window starts from a fresh dimension-2
/// level and ends with a collapse step; at onset 2 this drops the i=3
/// interval, which would otherwise touch [1,3] and break both properties.
class WindowSet {
 public:
  explicit WindowSet(int onset = 5);

  int onset() const { return onset_; }
  bool contains(std::int64_t level) const;
  /// The window [lo,hi] (by its exponent i) containing the level, if any.
  struct Window {
    int exponent;
    std::int64_t lo, hi;
  };
  std::optional<Window> window_of(std::int64_t level) const;
  const std::vector<Window>& kept_windows() const { return windows_; }

 private:
  int onset_;
  std::vector<Window> windows_;
};

/// Supplies the externally constructed degree-2^(2^i) spaces consumed by the
/// window-collapse step when i is in the index set. Their internal origin is
/// out of scope here; only the degree and the dimension bound are contracted.
class FSpaceProvider {
 public:
  virtual ~FSpaceProvider() = default;
  /// A subspace of H(2^(2^i)) with dim < 2^(2^(i+1)) - 2, or nullopt for
  /// "no space for this index".
  virtual std::optional<GradedSubspace> f_space(int i, const Field& field) = 0;
  virtual std::string describe() const = 0;
};

std::unique_ptr<FSpaceProvider> make_empty_provider();
std::unique_ptr<FSpaceProvider> make_random_provider(std::uint64_t seed, int dim_cap = 100);
std::unique_ptr<FSpaceProvider> make_file_provider(const std::string& path);

/// All parameters of a construction run.
struct Schedule {
  Field field = Field::gf(2);
  int onset = 5;
  std::set<int> z_set;  // indices whose F-space is consumed; empty by default
  ComplementRule v_choice = ComplementRule::kMonomialLex;
  std::string f_provider = "none";  // "none" | "random:<seed>" | "file:<path>"

  WindowSet windows() const { return WindowSet(onset); }
  std::unique_ptr<FSpaceProvider> make_provider() const;
  void validate() const;  // throws std::invalid_argument on bad parameters
};

}  // namespace gkforge
