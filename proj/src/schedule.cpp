#include "gkforge/schedule.hpp"

#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "gkforge/serialize.hpp"

namespace gkforge {

WindowSet::WindowSet(int onset) : onset_(onset) {
  if (onset < 2) throw std::invalid_argument("window onset must be at least 2");
  // Levels beyond 62 are far past anything a build can touch.
  std::int64_t prev_hi = -2;
  for (int i = onset; i < 62; ++i) {
    std::int64_t lo = (std::int64_t{1} << i) - i - 1;
    std::int64_t hi = (std::int64_t{1} << i) - 1;
    if (lo <= prev_hi + 1) continue;  // would touch the previous window
    windows_.push_back(Window{i, lo, hi});
    prev_hi = hi;
  }
}

bool WindowSet::contains(std::int64_t level) const {
  return window_of(level).has_value();
}

std::optional<WindowSet::Window> WindowSet::window_of(std::int64_t level) const {
  for (const auto& w : windows_) {
    if (level < w.lo) return std::nullopt;
    if (level <= w.hi) return w;
  }
  return std::nullopt;
}

namespace {

class EmptyProvider : public FSpaceProvider {
 public:
  std::optional<GradedSubspace> f_space(int, const Field&) override { return std::nullopt; }
  std::string describe() const override { return "none"; }
};

class RandomProvider : public FSpaceProvider {
 public:
  RandomProvider(std::uint64_t seed, int dim_cap) : seed_(seed), dim_cap_(dim_cap) {}

  std::optional<GradedSubspace> f_space(int i, const Field& field) override {
    if (i < 0 || i > 4) return std::nullopt;  // degree 2^(2^i) must stay materializable
    std::int64_t degree = std::int64_t{1} << (std::int64_t{1} << i);
    if (degree > 64) return std::nullopt;
    std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i + 1)));
    std::vector<Poly> gens;
    int want = dim_cap_;
    for (int g = 0; g < want; ++g) {
      Poly p(field);
      int terms = 2 + static_cast<int>(rng() % 7);
      for (int t = 0; t < terms; ++t) {
        std::string s;
        for (std::int64_t l = 0; l < degree; ++l)
          s.push_back(static_cast<char>('x' + rng() % 3));
        std::int64_t c = 1;
        if (field.kind() == Field::Kind::kPrime)
          c = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(
                                                field.characteristic() - 1 ? field.characteristic() - 1 : 1));
        p.add_term(Word::parse(s), fe_from_int(field, c));
      }
      if (!p.is_zero()) gens.push_back(p);
    }
    return span(gens, static_cast<int>(degree), field);
  }

  std::string describe() const override { return "random:" + std::to_string(seed_); }

 private:
  std::uint64_t seed_;
  int dim_cap_;
};

class FileProvider : public FSpaceProvider {
 public:
  explicit FileProvider(std::string path) : path_(std::move(path)) {}

  std::optional<GradedSubspace> f_space(int i, const Field& field) override {
    std::ifstream in(path_);
    if (!in) throw std::runtime_error("cannot open f-space file: " + path_);
    nlohmann::json j;
    in >> j;
    std::string key = std::to_string(i);
    if (!j.contains(key)) return std::nullopt;
    return subspace_from_json(j.at(key), field);
  }

  std::string describe() const override { return "file:" + path_; }

 private:
  std::string path_;
};

}  // namespace

std::unique_ptr<FSpaceProvider> make_empty_provider() {
  return std::make_unique<EmptyProvider>();
}

std::unique_ptr<FSpaceProvider> make_random_provider(std::uint64_t seed, int dim_cap) {
  return std::make_unique<RandomProvider>(seed, dim_cap);
}

std::unique_ptr<FSpaceProvider> make_file_provider(const std::string& path) {
  return std::make_unique<FileProvider>(path);
}

std::unique_ptr<FSpaceProvider> Schedule::make_provider() const {
  if (f_provider == "none" || f_provider.empty()) return make_empty_provider();
  if (f_provider.rfind("random:", 0) == 0)
    return make_random_provider(std::stoull(f_provider.substr(7)));
  if (f_provider.rfind("file:", 0) == 0) return make_file_provider(f_provider.substr(5));
  throw std::invalid_argument("unknown f-provider spec: " + f_provider);
}

void Schedule::validate() const {
  if (onset < 2) throw std::invalid_argument("window onset must be at least 2");
  for (int i : z_set)
    if (i < onset)
      throw std::invalid_argument("index set entries must be at least the window onset");
  (void)make_provider();
}

}  // namespace gkforge
