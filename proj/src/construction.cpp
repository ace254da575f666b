#include "gkforge/construction.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gkforge/serialize.hpp"

namespace gkforge {

namespace {

constexpr std::size_t kExplicitCap = 4096;

std::vector<Word> concat_all(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::vector<Word> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a)
    for (const auto& v : b) out.push_back(u * v);
  return out;
}

bool word_member(const std::vector<Word>& sorted, const Word& w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

std::vector<FieldElem> unit_vector(const Field& k, std::size_t dim, std::size_t at) {
  std::vector<FieldElem> v(dim, fe_zero(k));
  v[at] = fe_one(k);
  return v;
}

// CoMonomial data of U(2^n)H(2^n) + H(2^n)U(2^n) from that of U(2^n):
// excluded = X⊗X, correction rows = {c·e, e·c}. Returns nullopt past caps.
struct WindowSumParts {
  std::vector<Word> excluded;
  std::vector<Poly> corrections;
};
std::optional<WindowSumParts> window_sum_parts(const GradedSubspace& u) {
  const auto& x = u.excluded_words();
  if (x.size() * x.size() > kExplicitCap) return std::nullopt;
  std::size_t corr_rank = 0;
  std::vector<Poly> corr_polys;
  if (u.repr() == SubspaceRepr::kCoMonomial) {
    try {
      corr_polys = u.correction().basis_polys();
      corr_rank = corr_polys.size();
    } catch (const std::logic_error&) {
    }
  }
  if (2 * corr_rank * x.size() > kExplicitCap) return std::nullopt;
  WindowSumParts parts;
  parts.excluded = concat_all(x, x);
  std::sort(parts.excluded.begin(), parts.excluded.end());
  const Field& k = u.field();
  for (const auto& c : corr_polys)
    for (const auto& e : x) {
      parts.corrections.push_back(c * Poly::monomial(k, e));
      parts.corrections.push_back(Poly::monomial(k, e) * c);
    }
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

ConstructionState build(const Schedule& schedule, int max_power) {
  schedule.validate();
  if (max_power < 0 || max_power > 16)
    throw std::invalid_argument("max power out of range (0..16)");
  const Field& k = schedule.field;
  WindowSet windows = schedule.windows();
  auto provider = schedule.make_provider();

  ConstructionState st(schedule, max_power);
  st.v_words_.push_back({Word::parse("x"), Word::parse("y")});
  st.u_explicit_.push_back(GradedSubspace::comonomial(
      k, 1, {Word::parse("x"), Word::parse("y")}));
  st.f_consumed_.push_back(std::nullopt);

  for (int n = 0; n < max_power; ++n) {
    const std::vector<Word>& v = st.v_words_[static_cast<std::size_t>(n)];
    const std::size_t d = v.size();
    std::vector<Word> vv = concat_all(v, v);  // already sorted: equal-length concat
    for (std::size_t t = 1; t < vv.size(); ++t)
      if (!(vv[t - 1] < vv[t]))
        throw std::logic_error("two-block concatenations not strictly increasing");

    const bool in_s = windows.contains(n);
    const bool in_s1 = windows.contains(n + 1);

    LevelStep step;
    std::vector<Word> new_v;
    std::vector<std::vector<FieldElem>> trans;
    // The piece added to UH+HU: either monomials (complement words) or rows (P).
    std::vector<Word> extra_words;
    std::optional<SupportMatrix> extra_rows;
    std::optional<GradedSubspace> f_here;

    if (in_s && in_s1) {
      step.case_id = 1;
      new_v = vv;
      trans.assign(vv.size(), std::vector<FieldElem>(vv.size(), fe_zero(k)));
      for (std::size_t t = 0; t < vv.size(); ++t) trans[t][t] = fe_one(k);
    } else if (!in_s) {
      step.case_id = 2;
      if (d != 2)
        throw std::runtime_error("construction failure: expected a dimension-2 level at " +
                                 std::to_string(n));
      new_v = {vv[0], vv[1]};
      step.chosen = new_v;
      extra_words.assign(vv.begin() + 2, vv.end());
      trans.assign(2, std::vector<FieldElem>(vv.size(), fe_zero(k)));
      trans[0][0] = fe_one(k);
      trans[1][1] = fe_one(k);
    } else {
      step.case_id = 3;
      auto win = windows.window_of(n);
      if (!win || n != win->hi)
        throw std::logic_error("collapse step outside a window end");
      step.window_exponent = win->exponent;
      int i = win->exponent;
      if (i <= 5) {
        BigInt expected = BigInt(1) << (std::int64_t{1} << i);
        if (BigInt(d) != expected)
          throw std::runtime_error("construction failure: window end level " +
                                   std::to_string(n) + " has the wrong dimension");
      }
      std::optional<GradedSubspace> f;
      if (schedule.z_set.count(i)) f = provider->f_space(i, k);
      if (f) {
        if (f->degree() != 2 * (std::int64_t{1} << n))
          throw std::invalid_argument("schedule error: provided space has the wrong degree");
        BigInt bound = BigInt(d) * BigInt(d) - 2;
        if (f->dimension() >= bound)
          throw std::invalid_argument("schedule error: provided space too large");
        step.consumed_f = true;
        f_here = f;

        const auto& u = st.u_explicit_[static_cast<std::size_t>(n)];
        bool u_plain = u.has_value();
        if (u_plain) {
          try {
            (void)u->correction();
            u_plain = false;  // a second collapse with corrections is out of reach
          } catch (const std::logic_error&) {
          }
        }
        if (!u_plain)
          throw std::runtime_error(
              "construction failure: collapse with an external space needs a plain level");

        // split each basis vector along the two-block monomials vs the rest
        SupportMatrix fbar(k, vv);
        for (const auto& g : f->to_echelon().echelon_basis().basis_polys()) {
          Poly inside(k);
          for (const auto& [w, c] : g.terms())
            if (word_member(vv, w)) inside.add_term(w, c);
          if (!inside.is_zero()) fbar.insert(inside);
        }

        // the two lexicographically first monomials independent of the split parts
        SupportMatrix probe = fbar;
        std::optional<Word> m1, m2;
        for (std::size_t t = 0; t < vv.size(); ++t) {
          if (probe.insert(unit_vector(k, vv.size(), t))) {
            if (!m1) {
              m1 = vv[t];
            } else {
              m2 = vv[t];
              break;
            }
          }
        }
        if (!m1 || !m2)
          throw std::runtime_error(
              "construction failure: no two monomials span a complement (split rank " +
              std::to_string(fbar.rank()) + ")");
        new_v = {*m1, *m2};
        step.chosen = new_v;

        // grow P greedily past the split vectors, avoiding the chosen pair
        SupportMatrix p = fbar;
        SupportMatrix aux = probe;  // fbar + m1 + m2
        for (std::size_t t = 0; t < vv.size() && p.rank() < vv.size() - 2; ++t) {
          if (aux.insert(unit_vector(k, vv.size(), t))) {
            if (!p.insert(unit_vector(k, vv.size(), t)))
              throw std::logic_error("inconsistent greedy extension");
          }
        }
        if (p.rank() != vv.size() - 2)
          throw std::runtime_error("construction failure: complement extension fell short");

        // transition: coordinates modulo P in the {m1,m2} basis, solved on the
        // two non-pivot columns of P
        std::vector<std::size_t> free_cols;
        {
          std::set<std::size_t> pivots(p.pivots().begin(), p.pivots().end());
          for (std::size_t t = 0; t < vv.size(); ++t)
            if (!pivots.count(t)) free_cols.push_back(t);
        }
        if (free_cols.size() != 2) throw std::logic_error("expected two free columns");
        auto col_of = [&](const Word& w) {
          return static_cast<std::size_t>(
              std::lower_bound(vv.begin(), vv.end(), w) - vv.begin());
        };
        auto r1 = p.reduce(unit_vector(k, vv.size(), col_of(*m1)));
        auto r2 = p.reduce(unit_vector(k, vv.size(), col_of(*m2)));
        // 2x2 system on the free columns
        FieldElem a = r1[free_cols[0]], b = r2[free_cols[0]];
        FieldElem c = r1[free_cols[1]], dd = r2[free_cols[1]];
        FieldElem det = fe_sub(k, fe_mul(k, a, dd), fe_mul(k, b, c));
        if (det.is_zero()) throw std::logic_error("chosen monomials do not span the quotient");
        FieldElem det_inv = fe_inv(k, det);
        trans.assign(2, std::vector<FieldElem>(vv.size(), fe_zero(k)));
        for (std::size_t t = 0; t < vv.size(); ++t) {
          auto r = p.reduce(unit_vector(k, vv.size(), t));
          FieldElem u0 = r[free_cols[0]], u1 = r[free_cols[1]];
          // [alpha beta]^T = inv([[a b],[c dd]]) * [u0 u1]^T
          trans[0][t] = fe_mul(k, det_inv,
                               fe_sub(k, fe_mul(k, dd, u0), fe_mul(k, b, u1)));
          trans[1][t] = fe_mul(k, det_inv,
                               fe_sub(k, fe_mul(k, a, u1), fe_mul(k, c, u0)));
        }
        extra_rows = std::move(p);
      } else {
        // no external space: monomial complement, lexicographically first pair
        new_v = {vv[0], vv[1]};
        step.chosen = new_v;
        extra_words.assign(vv.begin() + 2, vv.end());
        trans.assign(2, std::vector<FieldElem>(vv.size(), fe_zero(k)));
        trans[0][0] = fe_one(k);
        trans[1][1] = fe_one(k);
      }
    }

    // the chosen pair must complement the added piece inside the two-block span
    if (step.case_id != 1) {
      SupportMatrix check(k, vv);
      for (const auto& w : extra_words) check.insert(Poly::monomial(k, w));
      if (extra_rows)
        for (const auto& p : extra_rows->basis_polys()) check.insert(p);
      for (const auto& m : new_v)
        if (!check.insert(Poly::monomial(k, m)))
          throw std::runtime_error("construction failure: chosen monomial not independent");
      if (check.rank() != vv.size())
        throw std::runtime_error("construction failure: complement does not fill the span");
    }

    // explicit co-monomial form of the next U, while it stays small
    std::optional<GradedSubspace> next_u;
    const auto& u_n = st.u_explicit_[static_cast<std::size_t>(n)];
    if (u_n) {
      auto parts = window_sum_parts(*u_n);
      if (parts) {
        std::vector<Word> x = parts->excluded;
        if (!extra_words.empty()) {
          std::vector<Word> keep;
          std::set_difference(x.begin(), x.end(), extra_words.begin(), extra_words.end(),
                              std::back_inserter(keep));
          x = std::move(keep);
        }
        SupportMatrix corr(k, x);
        for (const auto& p : parts->corrections) {
          Poly q(k);
          for (const auto& [w, c] : p.terms())
            if (word_member(x, w)) q.add_term(w, c);
          if (!q.is_zero()) corr.insert(q);
        }
        if (extra_rows)
          for (const auto& p : extra_rows->basis_polys()) corr.insert(p);
        if (x.size() <= kExplicitCap) {
          int next_degree = static_cast<int>(std::int64_t{2} << n);
          next_u = GradedSubspace::comonomial(k, next_degree, std::move(x), std::move(corr));
        }
      }
    }

    st.v_words_.push_back(std::move(new_v));
    st.u_explicit_.push_back(std::move(next_u));
    st.f_consumed_.push_back(std::move(f_here));
    st.steps_.push_back(std::move(step));
    st.transitions_.push_back(std::move(trans));
  }
  return st;
}

// ---------------------------------------------------------------------------
// accessors
// ---------------------------------------------------------------------------

void ConstructionState::check_level(int n) const {
  if (n < 0 || n > max_power_) throw std::out_of_range("level not built");
}

const std::vector<Word>& ConstructionState::v_words(int n) const {
  check_level(n);
  return v_words_[static_cast<std::size_t>(n)];
}

GradedSubspace ConstructionState::v_space(int n) const {
  check_level(n);
  return GradedSubspace::from_monomials(field(), static_cast<int>(level_degree(n)),
                                        v_words_[static_cast<std::size_t>(n)]);
}

bool ConstructionState::has_explicit_u(int n) const {
  check_level(n);
  return u_explicit_[static_cast<std::size_t>(n)].has_value();
}

bool ConstructionState::plain_level(int n) const {
  check_level(n);
  const auto& u = u_explicit_[static_cast<std::size_t>(n)];
  if (!u) return false;
  if (fault_.kind != FaultKind::kNone && fault_.level == n) return false;
  if (!(u->excluded_words() == v_words(n))) return false;
  try {
    (void)u->correction();
    return false;
  } catch (const std::logic_error&) {
    return true;
  }
}

const GradedSubspace& ConstructionState::u_space(int n) const {
  check_level(n);
  const auto& u = u_explicit_[static_cast<std::size_t>(n)];
  if (!u) throw std::logic_error("no explicit co-monomial form at this level");
  return *u;
}

BigInt ConstructionState::u_dim(int n) const {
  check_level(n);
  const auto& u = u_explicit_[static_cast<std::size_t>(n)];
  if (u) return u->dimension();
  return pow3(level_degree(n)) - BigInt(v_dim(n));
}

const std::optional<GradedSubspace>& ConstructionState::f_consumed(int n) const {
  check_level(n);
  return f_consumed_[static_cast<std::size_t>(n)];
}

const LevelStep& ConstructionState::step_to(int n) const {
  if (n < 1 || n > max_power_) throw std::out_of_range("no step to this level");
  return steps_[static_cast<std::size_t>(n - 1)];
}

const std::vector<std::vector<FieldElem>>& ConstructionState::transition(int n) const {
  if (n < 1 || n > max_power_) throw std::out_of_range("no transition to this level");
  return transitions_[static_cast<std::size_t>(n - 1)];
}

std::string ConstructionState::provenance_text() const {
  std::ostringstream os;
  for (int n = 1; n <= max_power_; ++n) {
    const auto& s = step_to(n);
    os << "level " << n << " (degree " << level_degree(n) << "): case " << s.case_id;
    if (s.case_id == 3) {
      os << " (window exponent " << s.window_exponent
         << (s.consumed_f ? ", consumed external space" : ", monomial complement") << ")";
    }
    if (!s.chosen.empty()) {
      os << ", chose";
      for (const auto& w : s.chosen) os << " " << w.str();
    }
    os << "; dim V=" << v_dim(n) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// quotient functional
// ---------------------------------------------------------------------------

std::vector<FieldElem> ConstructionState::v_coords(int n, const Word& w) const {
  check_level(n);
  const Field& k = field();
  if (w.degree() != level_degree(n))
    throw std::invalid_argument("word degree does not match the level");
  // level-0 values per letter
  std::vector<std::vector<FieldElem>> vals;
  {
    const auto& v0 = v_words_[0];
    for (int i = 0; i < w.degree(); ++i) {
      std::vector<FieldElem> cell(v0.size(), fe_zero(k));
      Word letter = w.slice(i, 1);
      for (std::size_t t = 0; t < v0.size(); ++t)
        if (v0[t] == letter) cell[t] = fe_one(k);
      vals.push_back(std::move(cell));
    }
  }
  for (int lvl = 1; lvl <= n; ++lvl) {
    const auto& t = transitions_[static_cast<std::size_t>(lvl - 1)];
    std::size_t dprev = v_words_[static_cast<std::size_t>(lvl - 1)].size();
    std::size_t dnew = v_words_[static_cast<std::size_t>(lvl)].size();
    std::vector<std::vector<FieldElem>> next;
    next.reserve(vals.size() / 2);
    for (std::size_t b = 0; b + 1 < vals.size(); b += 2) {
      const auto& l = vals[b];
      const auto& r = vals[b + 1];
      std::vector<FieldElem> out(dnew, fe_zero(k));
      for (std::size_t i = 0; i < dprev; ++i) {
        if (l[i].is_zero()) continue;
        for (std::size_t j = 0; j < dprev; ++j) {
          if (r[j].is_zero()) continue;
          FieldElem prod = fe_mul(k, l[i], r[j]);
          std::size_t col = i * dprev + j;
          for (std::size_t row = 0; row < dnew; ++row)
            if (!t[row][col].is_zero())
              out[row] = fe_add(k, out[row], fe_mul(k, prod, t[row][col]));
        }
      }
      next.push_back(std::move(out));
    }
    vals = std::move(next);
  }
  return vals[0];
}

std::vector<FieldElem> ConstructionState::v_coords(int n, const Poly& p) const {
  const Field& k = field();
  std::vector<FieldElem> acc(v_words(n).size(), fe_zero(k));
  for (const auto& [w, c] : p.terms()) {
    auto cw = v_coords(n, w);
    for (std::size_t i = 0; i < acc.size(); ++i)
      if (!cw[i].is_zero()) acc[i] = fe_add(k, acc[i], fe_mul(k, c, cw[i]));
  }
  return acc;
}

FieldElem ConstructionState::fault_residue(int n, const Word& w) const {
  // the shrink fault cuts U(level) by the "starts with z" functional
  (void)n;
  return w.letter(0) == 'z' ? fe_one(field()) : fe_zero(field());
}

bool ConstructionState::in_u(int n, const Poly& p) const {
  if (p.is_zero()) return true;
  if (!p.is_homogeneous() || p.degree() != level_degree(n))
    throw std::invalid_argument("membership query requires degree 2^n");
  auto c = v_coords(n, p);
  for (const auto& e : c)
    if (!e.is_zero()) return false;
  if (fault_.kind == FaultKind::kShrinkAbsorbed && fault_.level == n) {
    FieldElem lam = fe_zero(field());
    for (const auto& [w, cf] : p.terms())
      if (w.letter(0) == 'z') lam = fe_add(field(), lam, cf);
    if (!lam.is_zero()) return false;
  }
  if (fault_.kind == FaultKind::kDropUGenerator && fault_.level == n &&
      u_explicit_[static_cast<std::size_t>(n)])
    return u_explicit_[static_cast<std::size_t>(n)]->contains(p);
  return true;
}

bool ConstructionState::in_window_sum(int m1, const Poly& p) const {
  return !window_sum_witness(m1, p).has_value();
}

std::optional<std::string> ConstructionState::window_sum_witness(int m1,
                                                                 const Poly& p) const {
  check_level(m1);
  if (p.is_zero()) return std::nullopt;
  const Field& k = field();
  std::int64_t half = level_degree(m1);
  if (!p.is_homogeneous() || p.degree() != 2 * half)
    throw std::invalid_argument("window membership requires degree 2^(m+2)");
  bool faulted = fault_.kind == FaultKind::kShrinkAbsorbed && fault_.level == m1;
  std::size_t d = v_words(m1).size() + (faulted ? 1 : 0);
  std::vector<std::vector<FieldElem>> acc(d, std::vector<FieldElem>(d, fe_zero(k)));
  auto residue = [&](const Word& w) {
    auto r = v_coords(m1, w);
    if (faulted) r.push_back(fault_residue(m1, w));
    return r;
  };
  for (const auto& [w, c] : p.terms()) {
    auto ra = residue(w.slice(0, static_cast<int>(half)));
    auto rb = residue(w.slice(static_cast<int>(half), static_cast<int>(half)));
    for (std::size_t i = 0; i < d; ++i) {
      if (ra[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (!rb[j].is_zero())
          acc[i][j] = fe_add(k, acc[i][j], fe_mul(k, c, fe_mul(k, ra[i], rb[j])));
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!acc[i][j].is_zero()) {
        std::ostringstream os;
        os << "nonzero pairing at (" << i << "," << j
           << ") = " << fe_to_string(k, acc[i][j]);
        return os.str();
      }
  return std::nullopt;
}

Poly ConstructionState::lift_from_v(int n, const std::vector<FieldElem>& coords) const {
  const auto& v = v_words(n);
  if (coords.size() != v.size()) throw std::invalid_argument("coordinate width mismatch");
  Poly p(field());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!coords[i].is_zero()) p.add_term(v[i], coords[i]);
  return p;
}

Word ConstructionState::random_word(int degree, std::mt19937_64& rng) const {
  std::string s;
  s.reserve(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) s.push_back(static_cast<char>('x' + rng() % 3));
  return Word::parse(s);
}

Poly ConstructionState::sample_u_element(int n, std::mt19937_64& rng, int terms) const {
  const Field& k = field();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Poly p(k);
    for (int t = 0; t < terms; ++t) {
      std::int64_t c = 1;
      if (k.kind() == Field::Kind::kPrime && k.characteristic() > 2)
        c = 1 + static_cast<std::int64_t>(
                    rng() % static_cast<std::uint64_t>(k.characteristic() - 1));
      p.add_term(random_word(static_cast<int>(level_degree(n)), rng), fe_from_int(k, c));
    }
    auto coords = v_coords(n, p);
    Poly fixup = lift_from_v(n, coords);
    p = p - fixup;
    if (!p.is_zero()) return p;
  }
  throw std::runtime_error("failed to sample a nonzero absorbed element");
}

ConstructionState ConstructionState::with_fault(const Fault& f) const {
  ConstructionState st = *this;
  st.fault_ = f;
  if (f.kind == FaultKind::kDropUGenerator) {
    st.check_level(f.level);
    auto& u = st.u_explicit_[static_cast<std::size_t>(f.level)];
    if (!u) throw std::logic_error("fault needs an explicit level");
    std::vector<Word> x = u->excluded_words();
    std::optional<SupportMatrix> corr;
    try {
      corr = u->correction();
    } catch (const std::logic_error&) {
    }
    // first monomial that is currently a free generator
    std::int64_t deg = st.level_degree(f.level);
    for (BigInt idx = 0;; ++idx) {
      Word w = Word::from_index(static_cast<int>(deg), idx);
      if (!std::binary_search(x.begin(), x.end(), w)) {
        x.push_back(w);
        break;
      }
    }
    std::sort(x.begin(), x.end());
    SupportMatrix corr2(field(), x);
    if (corr)
      for (const auto& p : corr->basis_polys()) corr2.insert(p);
    u = GradedSubspace::comonomial(field(), static_cast<int>(deg), std::move(x),
                                   std::move(corr2));
  }
  return st;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

nlohmann::json ConstructionState::to_json() const {
  nlohmann::json j;
  j["format"] = 1;
  j["schedule"] = schedule_to_json(schedule_);
  j["max_power"] = max_power_;
  const Field& k = field();
  nlohmann::json levels = nlohmann::json::array();
  for (int n = 0; n <= max_power_; ++n) {
    nlohmann::json lj;
    lj["n"] = n;
    nlohmann::json vw = nlohmann::json::array();
    for (const auto& w : v_words(n)) vw.push_back(w.str());
    lj["v_words"] = vw;
    lj["u"] = has_explicit_u(n) ? subspace_to_json(u_space(n)) : nlohmann::json();
    lj["f"] = f_consumed(n) ? subspace_to_json(*f_consumed(n)) : nlohmann::json();
    levels.push_back(lj);
  }
  j["levels"] = levels;
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : steps_) {
    nlohmann::json sj;
    sj["case"] = s.case_id;
    sj["window_exponent"] = s.window_exponent;
    sj["consumed_f"] = s.consumed_f;
    nlohmann::json ch = nlohmann::json::array();
    for (const auto& w : s.chosen) ch.push_back(w.str());
    sj["chosen"] = ch;
    steps.push_back(sj);
  }
  j["steps"] = steps;
  nlohmann::json trans = nlohmann::json::array();
  for (const auto& t : transitions_) {
    nlohmann::json tm = nlohmann::json::array();
    for (const auto& row : t) {
      nlohmann::json tr = nlohmann::json::array();
      for (const auto& c : row) tr.push_back(fe_to_string(k, c));
      tm.push_back(tr);
    }
    trans.push_back(tm);
  }
  j["transitions"] = trans;
  return j;
}

ConstructionState ConstructionState::from_json(const nlohmann::json& j) {
  if (j.at("format").get<int>() != 1)
    throw std::invalid_argument("unsupported state format version");
  Schedule sched = schedule_from_json(j.at("schedule"));
  int max_power = j.at("max_power").get<int>();
  ConstructionState st(sched, max_power);
  const Field& k = st.field();
  for (const auto& lj : j.at("levels")) {
    std::vector<Word> vw;
    for (const auto& s : lj.at("v_words")) vw.push_back(Word::parse(s.get<std::string>()));
    st.v_words_.push_back(std::move(vw));
    st.u_explicit_.push_back(lj.at("u").is_null()
                                 ? std::optional<GradedSubspace>()
                                 : std::optional<GradedSubspace>(
                                       subspace_from_json(lj.at("u"), k)));
    st.f_consumed_.push_back(lj.at("f").is_null()
                                 ? std::optional<GradedSubspace>()
                                 : std::optional<GradedSubspace>(
                                       subspace_from_json(lj.at("f"), k)));
  }
  for (const auto& sj : j.at("steps")) {
    LevelStep s;
    s.case_id = sj.at("case").get<int>();
    s.window_exponent = sj.at("window_exponent").get<int>();
    s.consumed_f = sj.at("consumed_f").get<bool>();
    for (const auto& w : sj.at("chosen")) s.chosen.push_back(Word::parse(w.get<std::string>()));
    st.steps_.push_back(std::move(s));
  }
  for (const auto& tm : j.at("transitions")) {
    std::vector<std::vector<FieldElem>> t;
    for (const auto& tr : tm) {
      std::vector<FieldElem> row;
      for (const auto& c : tr) row.push_back(fe_parse(k, c.get<std::string>()));
      t.push_back(std::move(row));
    }
    st.transitions_.push_back(std::move(t));
  }
  if (st.v_words_.size() != static_cast<std::size_t>(max_power) + 1 ||
      st.steps_.size() != static_cast<std::size_t>(max_power) ||
      st.transitions_.size() != static_cast<std::size_t>(max_power))
    throw std::invalid_argument("state file with inconsistent level count");
  return st;
}

// ---------------------------------------------------------------------------
// the seven conditions
// ---------------------------------------------------------------------------

bool SevenReport::all_pass() const {
  for (const auto& c : conditions)
    if (c.applicable && !c.pass) return false;
  return true;
}

SevenReport verify_seven(const ConstructionState& st, int n, std::uint64_t seed) {
  const Field& k = st.field();
  WindowSet windows = st.schedule().windows();
  SevenReport report;
  report.level = n;
  auto& out = report.conditions;

  // 1: dimension 2 off the window set
  {
    ConditionResult r;
    r.condition = 1;
    r.applicable = !windows.contains(n);
    if (r.applicable) {
      r.pass = st.v_dim(n) == 2;
      r.detail = "dim V = " + std::to_string(st.v_dim(n));
    }
    out.push_back(r);
  }
  // 2: doubling dimensions inside a window
  {
    ConditionResult r;
    r.condition = 2;
    auto win = windows.window_of(n);
    r.applicable = win.has_value();
    if (r.applicable) {
      std::int64_t j = n - win->lo;
      BigInt expect = BigInt(1) << (std::int64_t{1} << j);
      r.pass = BigInt(st.v_dim(n)) == expect;
      r.detail = "dim V = " + std::to_string(st.v_dim(n)) + ", expected " + expect.str();
    }
    out.push_back(r);
  }
  // 3: monomial generation
  {
    ConditionResult r;
    r.condition = 3;
    r.pass = true;
    for (const auto& w : st.v_words(n))
      if (w.degree() != st.level_degree(n)) {
        r.pass = false;
        r.detail = "bad word " + w.str();
      }
    out.push_back(r);
  }
  // 4: consumed external space sits inside U at its level
  {
    ConditionResult r;
    r.condition = 4;
    const auto& f = st.f_consumed(n);
    r.applicable = f.has_value();
    if (r.applicable) {
      r.pass = true;
      bool explicit_u = st.has_explicit_u(n);
      for (const auto& g : f->basis_generators()) {
        bool ok = explicit_u ? st.u_space(n).contains(g) : st.in_u(n, g);
        if (!ok) {
          r.pass = false;
          r.detail = "generator escapes: " + g.to_string();
          break;
        }
      }
      if (r.pass)
        r.detail = "contained, dim F = " + f->dimension().str() +
                   (explicit_u ? " (explicit reduction)" : " (functional)");
    }
    out.push_back(r);
  }
  // 5: complementary pair
  {
    ConditionResult r;
    r.condition = 5;
    BigInt total = pow3(st.level_degree(n));
    BigInt sum = BigInt(st.v_dim(n)) + st.u_dim(n);
    bool dims_ok = sum == total;
    bool trivial = true;
    std::string why;
    // the v-words must map to the standard basis under the quotient
    for (int i = 0; i < st.v_dim(n); ++i) {
      auto c = st.v_coords(n, st.v_words(n)[static_cast<std::size_t>(i)]);
      for (int t = 0; t < st.v_dim(n); ++t) {
        bool want_one = (t == i);
        if (want_one != !c[static_cast<std::size_t>(t)].is_zero()) {
          trivial = false;
          why = "quotient not split by " + st.v_words(n)[static_cast<std::size_t>(i)].str();
        }
      }
    }
    if (st.has_explicit_u(n)) {
      GradedSubspace meet = intersect(st.v_space(n), st.u_space(n));
      if (!meet.is_zero()) {
        trivial = false;
        why = "nontrivial intersection, dim " + meet.dimension().str();
      }
    }
    r.pass = dims_ok && trivial;
    r.detail = "dim V + dim U = " + sum.str() + " vs 3^deg = " + total.str() +
               (why.empty() ? "" : ("; " + why));
    out.push_back(r);
  }
  // 6: absorption into the next level
  {
    ConditionResult r;
    r.condition = 6;
    r.applicable = n + 1 <= st.max_power();
    if (r.applicable) {
      r.pass = true;
      std::vector<std::string> routes;
      if (st.has_explicit_u(n) && st.has_explicit_u(n + 1)) {
        auto parts = window_sum_parts(st.u_space(n));
        if (parts) {
          SupportMatrix corr(k, parts->excluded);
          for (const auto& p : parts->corrections) corr.insert(p);
          GradedSubspace lhs = GradedSubspace::comonomial(
              k, static_cast<int>(st.level_degree(n + 1)), parts->excluded, std::move(corr));
          if (!st.u_space(n + 1).contains_subspace(lhs)) {
            r.pass = false;
            r.detail = "explicit containment fails";
          }
          routes.push_back("explicit");
        }
      }
      {
        std::mt19937_64 rng(seed ^ (0xabcdull + static_cast<std::uint64_t>(n)));
        Poly zword = Poly::monomial(k, Word::repeated('z', static_cast<int>(st.level_degree(n))));
        std::vector<Poly> absorbed;
        if (st.in_u(n, zword)) absorbed.push_back(zword);
        for (int t = 0; t < 12; ++t) absorbed.push_back(st.sample_u_element(n, rng));
        for (const auto& u : absorbed) {
          Poly h = Poly::monomial(k, st.random_word(static_cast<int>(st.level_degree(n)), rng));
          for (const Poly& prod : {u * h, h * u}) {
            if (!st.in_u(n + 1, prod)) {
              r.pass = false;
              r.detail = "product escapes: " + prod.to_string().substr(0, 120);
              break;
            }
          }
          if (!r.pass) break;
        }
        routes.push_back("sampled");
      }
      if (r.pass) {
        r.detail = "absorbed via";
        for (const auto& s : routes) r.detail += " " + s;
      }
    }
    out.push_back(r);
  }
  // 7: next V splits into two blocks from this one
  {
    ConditionResult r;
    r.condition = 7;
    r.applicable = n + 1 <= st.max_power();
    if (r.applicable) {
      r.pass = true;
      const auto& cur = st.v_words(n);
      for (const auto& w : st.v_words(n + 1)) {
        Word a = w.slice(0, static_cast<int>(st.level_degree(n)));
        Word b = w.slice(static_cast<int>(st.level_degree(n)),
                         static_cast<int>(st.level_degree(n)));
        if (!std::binary_search(cur.begin(), cur.end(), a) ||
            !std::binary_search(cur.begin(), cur.end(), b)) {
          r.pass = false;
          r.detail = "word does not split: " + w.str();
          break;
        }
      }
    }
    out.push_back(r);
  }
  return report;
}

}  // namespace gkforge
