#include "gkforge/ideal_e.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gkforge {

namespace {

// plain echelon over coordinate vectors, used to prune spanning sets
class VecSpan {
 public:
  explicit VecSpan(const Field& k) : k_(&k) {}

  bool insert(std::vector<FieldElem> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const FieldElem c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t t = 0; t < v.size(); ++t)
        if (!rows_[r][t].is_zero())
          v[t] = fe_sub(*k_, v[t], fe_mul(*k_, c, rows_[r][t]));
    }
    std::size_t piv = v.size();
    for (std::size_t t = 0; t < v.size(); ++t)
      if (!v[t].is_zero()) {
        piv = t;
        break;
      }
    if (piv == v.size()) return false;
    FieldElem inv = fe_inv(*k_, v[piv]);
    for (std::size_t t = piv; t < v.size(); ++t)
      if (!v[t].is_zero()) v[t] = fe_mul(*k_, v[t], inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  bool is_zero() const { return rows_.empty(); }
  const std::vector<std::vector<FieldElem>>& rows() const { return rows_; }

 private:
  const Field* k_;
  std::vector<std::vector<FieldElem>> rows_;
  std::vector<std::size_t> pivots_;
};

bool all_zero(const std::vector<FieldElem>& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace

int IdealE::window_exponent(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("window exponent needs a positive degree");
  int m = 0;
  while ((std::int64_t{2} << m) <= n) ++m;
  return m;
}

void IdealE::require_window(std::int64_t n) const {
  if (required_level(n) > st_->max_power())
    throw std::out_of_range("degree " + std::to_string(n) + " needs the construction built through power " +
                            std::to_string(required_level(n)));
}

const std::vector<Word>& IdealE::forbidden_words(int m1) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = forbidden_cache_.find(m1);
  if (it != forbidden_cache_.end()) return it->second;
  const auto& v = st_->v_words(m1);
  std::vector<Word> out;
  out.reserve(v.size() * v.size());
  for (const auto& a : v)
    for (const auto& b : v) out.push_back(a * b);
  std::sort(out.begin(), out.end());
  return forbidden_cache_.emplace(m1, std::move(out)).first->second;
}

const std::vector<Word>& IdealE::factor_set(std::int64_t n) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = factor_cache_.find(n);
    if (it != factor_cache_.end()) return it->second;
  }
  require_window(n);
  const auto& fw = forbidden_words(required_level(n));
  std::set<Word> out;
  for (const auto& f : fw)
    for (int j = 0; j + n <= f.degree(); ++j) out.insert(f.slice(j, static_cast<int>(n)));
  std::lock_guard<std::mutex> lock(mu_);
  return factor_cache_.emplace(n, std::vector<Word>(out.begin(), out.end())).first->second;
}

bool IdealE::word_in_e(std::int64_t n, const Word& w) const {
  const auto& fs = factor_set(n);
  return !std::binary_search(fs.begin(), fs.end(), w);
}

// ---------------------------------------------------------------------------
// generator path: universal contraction of the flanking blocks
// ---------------------------------------------------------------------------

bool IdealE::word_escapes_at_offset(std::int64_t n, const Word& w, std::int64_t j) const {
  const Field& k = st_->field();
  int m1 = required_level(n);
  std::int64_t window = window_degree(n);
  std::int64_t lo = j, hi = j + n;  // fixed interval

  // spanning set of achievable quotient values for the subtree at [o, o+2^l)
  auto gens = [&](auto&& self, int level, std::int64_t o) -> std::vector<std::vector<FieldElem>> {
    std::int64_t len = std::int64_t{1} << level;
    if (o + len <= lo || o >= hi) {  // fully free: the image spans everything
      std::vector<std::vector<FieldElem>> basis;
      std::size_t d = st_->v_words(level).size();
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<FieldElem> e(d, fe_zero(k));
        e[i] = fe_one(k);
        basis.push_back(std::move(e));
      }
      return basis;
    }
    if (lo <= o && o + len <= hi) {  // fully fixed: one concrete value
      Word slice = w.slice(static_cast<int>(o - j), static_cast<int>(len));
      auto v = st_->v_coords(level, slice);
      if (all_zero(v)) return {};
      return {v};
    }
    auto left = self(self, level - 1, o);
    auto right = self(self, level - 1, o + len / 2);
    if (left.empty() || right.empty()) return {};
    std::size_t dprev = st_->v_words(level - 1).size();
    std::size_t dnew = st_->v_words(level).size();
    VecSpan span(k);
    std::vector<std::vector<FieldElem>> kept;
    for (const auto& a : left)
      for (const auto& b : right) {
        // value = T(a ⊗ b); reuse the state transition by evaluating through
        // a one-off tensor contraction
        std::vector<FieldElem> out(dnew, fe_zero(k));
        for (std::size_t i = 0; i < dprev; ++i) {
          if (a[i].is_zero()) continue;
          for (std::size_t jj = 0; jj < dprev; ++jj) {
            if (b[jj].is_zero()) continue;
            FieldElem prod = fe_mul(k, a[i], b[jj]);
            const auto& trow = st_->transition(level);
            std::size_t col = i * dprev + jj;
            for (std::size_t row = 0; row < dnew; ++row)
              if (!trow[row][col].is_zero())
                out[row] = fe_add(k, out[row], fe_mul(k, prod, trow[row][col]));
          }
        }
        if (!all_zero(out) && span.insert(out)) kept.push_back(out);
      }
    return kept;
  };

  std::int64_t half = window / 2;
  auto left = gens(gens, m1, 0);
  auto right = gens(gens, m1, half);
  return !left.empty() && !right.empty();
}

bool IdealE::word_in_e_generator(std::int64_t n, const Word& w) const {
  require_window(n);
  std::int64_t window = window_degree(n);
  for (std::int64_t j = 0; j + n <= window; ++j)
    if (word_escapes_at_offset(n, w, j)) return false;
  return true;
}

std::vector<Word> IdealE::factor_set_generator(std::int64_t n) const {
  require_window(n);
  int m1 = required_level(n);
  if (!st_->plain_level(m1))
    throw std::domain_error("generator factor sets need a plain window level");
  std::int64_t window = window_degree(n);
  std::set<Word> out;
  for (const auto& f : forbidden_words(m1)) {
    // the forbidden word itself must escape the window sum
    Poly fp = Poly::monomial(st_->field(), f);
    if (st_->in_window_sum(m1, fp)) continue;
    for (std::int64_t j = 0; j + n <= window; ++j) {
      Word cand = f.slice(static_cast<int>(j), static_cast<int>(n));
      if (word_escapes_at_offset(n, cand, j)) out.insert(cand);
    }
  }
  return {out.begin(), out.end()};
}

bool IdealE::poly_in_e_contraction(std::int64_t n, const Poly& r) const {
  if (r.is_zero()) return true;
  const Field& k = st_->field();
  int m1 = required_level(n);
  std::int64_t window = window_degree(n);

  for (std::int64_t j = 0; j + n <= window; ++j) {
    std::int64_t lo = j, hi = j + n;
    // collect maximal free subtrees
    std::vector<std::pair<int, std::int64_t>> slots;
    auto collect = [&](auto&& self, int level, std::int64_t o) -> void {
      std::int64_t len = std::int64_t{1} << level;
      if (o + len <= lo || o >= hi) {
        slots.emplace_back(level, o);
        return;
      }
      if (lo <= o && o + len <= hi) return;
      self(self, level - 1, o);
      self(self, level - 1, o + len / 2);
    };
    collect(collect, m1, 0);
    collect(collect, m1, window / 2);

    std::size_t combos = 1;
    for (const auto& [lvl, off] : slots) {
      combos *= st_->v_words(lvl).size();
      if (combos > 65536)
        throw std::domain_error("contraction with this many free positions is not desk-verifiable");
    }

    std::size_t d = st_->v_words(m1).size();
    std::vector<std::size_t> assignment(slots.size(), 0);
    for (std::size_t combo = 0; combo < combos; ++combo) {
      // decode the odometer
      std::size_t rem = combo;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        std::size_t ds = st_->v_words(slots[s].first).size();
        assignment[s] = rem % ds;
        rem /= ds;
      }
      std::vector<std::vector<FieldElem>> acc(d, std::vector<FieldElem>(d, fe_zero(k)));
      for (const auto& [word, coeff] : r.terms()) {
        auto eval = [&](auto&& self, int level, std::int64_t o) -> std::vector<FieldElem> {
          std::int64_t len = std::int64_t{1} << level;
          if (o + len <= lo || o >= hi) {
            auto it = std::find(slots.begin(), slots.end(),
                                std::make_pair(level, o));
            std::size_t idx = assignment[static_cast<std::size_t>(it - slots.begin())];
            std::vector<FieldElem> e(st_->v_words(level).size(), fe_zero(k));
            e[idx] = fe_one(k);
            return e;
          }
          if (lo <= o && o + len <= hi)
            return st_->v_coords(level, word.slice(static_cast<int>(o - j),
                                                   static_cast<int>(len)));
          auto a = self(self, level - 1, o);
          auto b = self(self, level - 1, o + len / 2);
          std::size_t dprev = st_->v_words(level - 1).size();
          std::size_t dnew = st_->v_words(level).size();
          std::vector<FieldElem> out(dnew, fe_zero(k));
          const auto& trow = st_->transition(level);
          for (std::size_t i = 0; i < dprev; ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t jj = 0; jj < dprev; ++jj) {
              if (b[jj].is_zero()) continue;
              FieldElem prod = fe_mul(k, a[i], b[jj]);
              std::size_t col = i * dprev + jj;
              for (std::size_t row = 0; row < dnew; ++row)
                if (!trow[row][col].is_zero())
                  out[row] = fe_add(k, out[row], fe_mul(k, prod, trow[row][col]));
            }
          }
          return out;
        };
        auto vl = eval(eval, m1, std::int64_t{0});
        auto vr = eval(eval, m1, window / 2);
        for (std::size_t a = 0; a < d; ++a) {
          if (vl[a].is_zero()) continue;
          for (std::size_t b = 0; b < d; ++b)
            if (!vr[b].is_zero())
              acc[a][b] = fe_add(k, acc[a][b], fe_mul(k, coeff, fe_mul(k, vl[a], vr[b])));
        }
      }
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (!acc[a][b].is_zero()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// dense route (tiny windows, GF(2))
// ---------------------------------------------------------------------------

bool IdealE::word_in_e_dense(std::int64_t n, const Word& w) const {
  require_window(n);
  int m1 = required_level(n);
  std::int64_t window = window_degree(n);
  if (window > 8) throw std::domain_error("dense route capped at window degree 8");
  if (st_->field().characteristic() != 2)
    throw std::domain_error("dense route works over GF(2)");
  if (!st_->has_explicit_u(m1)) throw std::domain_error("dense route needs an explicit level");

  // mark the words spanning U(2^m1)H(2^m1) + H(2^m1)U(2^m1), straight from the
  // stored excluded list
  const auto& excluded = st_->u_space(m1).excluded_words();
  std::int64_t half = window / 2;
  auto in_u_words = [&](const Word& u) {
    return !std::binary_search(excluded.begin(), excluded.end(), u);
  };
  std::vector<bool> marked(static_cast<std::size_t>(pow3(window)), false);
  for (const auto& prod : all_words(static_cast<int>(window))) {
    Word a = prod.slice(0, static_cast<int>(half));
    Word b = prod.slice(static_cast<int>(half), static_cast<int>(half));
    if (in_u_words(a) || in_u_words(b))
      marked[static_cast<std::size_t>(prod.index())] = true;
  }
  for (std::int64_t j = 0; j + n <= window; ++j) {
    std::int64_t rest = window - j - n;
    for (const auto& a : all_words(static_cast<int>(j)))
      for (const auto& b : all_words(static_cast<int>(rest))) {
        Word prod = a * w * b;
        if (!marked[static_cast<std::size_t>(prod.index())]) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// membership and the subspace view
// ---------------------------------------------------------------------------

std::pair<bool, std::optional<EMembershipWitness>> IdealE::membership(const Poly& r) const {
  if (r.is_zero()) return {true, std::nullopt};
  for (const auto& [w, c] : r.terms())
    if (w.degree() == 0)
      throw std::invalid_argument("membership is defined for elements with zero constant term");

  for (const auto& [n, component] : homogeneous_components(r)) {
    require_window(n);
    int m1 = required_level(n);
    if (st_->plain_level(m1)) {
      const auto& fs = factor_set(n);
      for (const auto& [w, c] : component.terms()) {
        if (std::binary_search(fs.begin(), fs.end(), w)) {
          // recover an embedding of w into a forbidden word
          EMembershipWitness wit;
          wit.n = n;
          wit.m = m1 - 1;
          wit.word = w;
          bool found = false;
          for (const auto& f : forbidden_words(m1)) {
            for (int j = 0; j + n <= f.degree() && !found; ++j) {
              if (f.slice(j, static_cast<int>(n)) == w) {
                wit.offset = j;
                wit.left = f.slice(0, j);
                wit.right = f.slice(j + static_cast<int>(n),
                                    f.degree() - j - static_cast<int>(n));
                wit.forbidden = f;
                found = true;
              }
            }
            if (found) break;
          }
          return {false, wit};
        }
      }
    } else {
      if (!poly_in_e_contraction(n, component)) {
        EMembershipWitness wit;
        wit.n = n;
        wit.m = m1 - 1;
        wit.word = component.terms().begin()->first;
        return {false, wit};
      }
    }
  }
  return {true, std::nullopt};
}

bool IdealE::revalidate(const EMembershipWitness& wit, const Poly& r) const {
  // the flanked product must genuinely escape the window sum
  const Field& k = st_->field();
  Poly component(k);
  for (const auto& [w, c] : r.terms())
    if (w.degree() == wit.n) component.add_term(w, c);
  Poly prod = Poly::monomial(k, wit.left) * component * Poly::monomial(k, wit.right);
  if (prod.is_zero()) return false;
  return !st_->in_window_sum(wit.m + 1, prod);
}

GradedSubspace IdealE::e_subspace(std::int64_t n) const {
  require_window(n);
  if (!st_->plain_level(required_level(n)))
    throw std::domain_error("the degreewise ideal is co-monomial only at plain levels");
  return GradedSubspace::comonomial(st_->field(), static_cast<int>(n), factor_set(n));
}

BigInt IdealE::quotient_dim(std::int64_t n) const {
  require_window(n);
  if (!st_->plain_level(required_level(n)))
    throw std::domain_error("quotient dimensions need a plain window level");
  return BigInt(factor_set(n).size());
}

Report IdealE::verify_ideal(std::int64_t n, bool inject_fault) const {
  Report rep;
  const std::string suite = "ideal";
  require_window(n + 1);
  if (n > 9) throw std::domain_error("basis enumeration capped at degree 9");
  const auto& fs_n = factor_set(n);
  const auto& fs_next = factor_set(n + 1);
  bool boundary = (n == (std::int64_t{2} << window_exponent(n)) - 1);

  std::size_t checked = 0;
  bool ok = true;
  std::string why;
  for (const auto& w : all_words(static_cast<int>(n))) {
    if (std::binary_search(fs_n.begin(), fs_n.end(), w)) continue;  // not in E(n)
    for (char l : {'x', 'y', 'z'}) {
      Word letter = Word::parse(std::string(1, l));
      for (const Word& prod : {letter * w, w * letter}) {
        ++checked;
        if (std::binary_search(fs_next.begin(), fs_next.end(), prod)) {
          ok = false;
          why = "product " + prod.str() + " of basis word " + w.str() + " escapes";
        }
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  std::string name = "letters-" + std::to_string(n);
  rep.add(ok ? CheckResult::ok(suite, name,
                               std::to_string(checked) + " products" +
                                   (boundary ? " (window boundary degree)" : ""))
             : CheckResult::fail(suite, name, why));

  if (inject_fault) {
    // pretend the first escaping word were inside the ideal
    bool detected = false;
    std::string wit;
    if (!fs_n.empty()) {
      Word w = fs_n.front();
      for (char l : {'x', 'y', 'z'}) {
        Word letter = Word::parse(std::string(1, l));
        for (const Word& prod : {letter * w, w * letter})
          if (std::binary_search(fs_next.begin(), fs_next.end(), prod)) {
            detected = true;
            wit = prod.str();
          }
      }
    }
    rep.add(detected
                ? CheckResult::fail(suite, "fault-" + std::to_string(n),
                                    "planted basis word breaks closure at " + wit)
                : CheckResult::ok(suite, "fault-" + std::to_string(n), "fault not detected"));
  }
  return rep;
}

IdealE::Sufficient IdealE::sufficient_condition(const Poly& r, std::int64_t n,
                                                const DecompositionTables& tables) const {
  if (r.is_zero()) return {true, -1, true};
  if (!r.is_homogeneous() || r.degree() != n)
    throw std::invalid_argument("hypothesis is about homogeneous elements of degree n");
  Sufficient out;
  out.hypothesis = true;
  for (std::int64_t t = 0; t <= n; ++t) {
    std::vector<Word> left = t == 0 ? std::vector<Word>{Word()} : tables.w_words(t);
    std::vector<Word> right = t == n ? std::vector<Word>{Word()} : tables.q_words(n - t);
    bool inside = true;
    for (const auto& a : left) {
      for (const auto& b : right) {
        Word bad = a * b;
        if (!r.coeff(bad).is_zero()) {
          inside = false;
          break;
        }
      }
      if (!inside) break;
    }
    if (!inside) {
      out.hypothesis = false;
      out.failing_t = t;
      break;
    }
  }
  if (out.hypothesis) out.member = membership(r).first;
  return out;
}

std::vector<Word> IdealE::kernel_excluded(std::int64_t n,
                                          const DecompositionTables& tables) const {
  std::set<Word> out;
  for (std::int64_t t = 0; t <= n; ++t) {
    std::vector<Word> left = t == 0 ? std::vector<Word>{Word()} : tables.w_words(t);
    std::vector<Word> right = t == n ? std::vector<Word>{Word()} : tables.q_words(n - t);
    for (const auto& a : left)
      for (const auto& b : right) out.insert(a * b);
  }
  return {out.begin(), out.end()};
}

GrowthReport IdealE::growth_table(std::int64_t max_n) const {
  GrowthReport rep;
  BigInt cum = 0;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    GrowthRow row;
    row.n = n;
    row.d = quotient_dim(n);
    cum += row.d;
    row.cumulative = cum;
    BigInt bound = pow3(34);
    BigInt np = 1;
    for (int t = 0; t < 18; ++t) np *= n;
    bound *= np;
    bound *= (n + 1);
    row.bound_ok = row.d <= bound;
    rep.rows.push_back(std::move(row));
  }
  rep.slope = gk_estimate(rep);
  rep.caveat =
      "slope reflects the pre-window regime at desk degrees; the asymptotic "
      "growth bound is far above anything testable here";
  return rep;
}

double IdealE::gk_estimate(const GrowthReport& rep) {
  // least-squares slope of log D against log n over the top half of the table
  std::vector<std::pair<double, double>> pts;
  std::size_t from = rep.rows.size() / 2;
  for (std::size_t i = from; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    pts.emplace_back(std::log(static_cast<double>(r.n)),
                     std::log(r.cumulative.convert_to<double>()));
  }
  if (pts.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double np = static_cast<double>(pts.size());
  return (np * sxy - sx * sy) / (np * sxx - sx * sx);
}

IdealE::NonNilWitness IdealE::nonnilpotence_witness(int m) const {
  if (m < 1) throw std::invalid_argument("witness needs m >= 1");
  if (m + 2 > st_->max_power())
    throw std::out_of_range("witness at m = " + std::to_string(m) +
                            " needs the construction built through power " +
                            std::to_string(m + 2));
  std::int64_t deg = std::int64_t{1} << m;
  NonNilWitness out;
  out.product = st_->v_words(m + 2).front();
  out.word = out.product.slice(0, static_cast<int>(deg));
  out.right = out.product.slice(static_cast<int>(deg),
                                out.product.degree() - static_cast<int>(deg));
  const auto& vm = st_->v_words(m);
  if (!std::binary_search(vm.begin(), vm.end(), out.word))
    throw std::logic_error("level word does not restrict to a lower level word");
  if (word_in_e(deg, out.word))
    throw std::logic_error("candidate witness fell inside the ideal; the construction is broken");
  const auto& v1 = st_->v_words(1);
  for (int p = 0; p + 2 <= out.word.degree(); p += 2) {
    Word blk = out.word.slice(p, 2);
    if (!std::binary_search(v1.begin(), v1.end(), blk))
      throw std::logic_error("witness does not factor through the degree-2 level");
    out.factors.push_back(blk);
  }
  return out;
}

}  // namespace gkforge
