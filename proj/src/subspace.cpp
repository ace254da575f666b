#include "gkforge/subspace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gkforge {

namespace {

constexpr int kEnumerateDegreeCap = 10;

std::vector<Word> sorted_unique(std::vector<Word> ws) {
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

void check_degrees(const std::vector<Word>& ws, int degree) {
  for (const auto& w : ws)
    if (w.degree() != degree) throw std::invalid_argument("word of the wrong degree");
}

// Difference a \ b for sorted vectors.
std::vector<Word> word_difference(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::vector<Word> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Word> word_intersection(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::vector<Word> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Word> word_union(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::vector<Word> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool word_member(const std::vector<Word>& sorted, const Word& w) {
  return std::binary_search(sorted.begin(), sorted.end(), w);
}

// Restriction of an echelonized set of rows to a (sorted) sub-support.
SupportMatrix restrict_rows(const SupportMatrix& m, const std::vector<Word>& support,
                            const Field& field) {
  SupportMatrix out(field, support);
  for (const auto& p : m.basis_polys()) {
    Poly q(field);
    for (const auto& [w, c] : p.terms())
      if (word_member(support, w)) q.add_term(w, c);
    if (!q.is_zero()) out.insert(q);
  }
  return out;
}

// The given space, as a row space over a support that covers it. Only valid
// for finitely supported representations.
SupportMatrix rows_over(const GradedSubspace& s, const std::vector<Word>& support) {
  SupportMatrix out(s.field(), support);
  if (s.repr() == SubspaceRepr::kMonomialSet) {
    for (const auto& w : s.monomial_words()) out.insert(Poly::monomial(s.field(), w));
  } else if (s.repr() == SubspaceRepr::kEchelonBasis) {
    for (const auto& p : s.echelon_basis().basis_polys()) out.insert(p);
  } else {
    throw std::logic_error("rows_over on a co-monomial space");
  }
  return out;
}

}  // namespace

GradedSubspace GradedSubspace::zero(Field field, int degree) {
  GradedSubspace s(field, degree);
  s.repr_ = SubspaceRepr::kMonomialSet;
  return s;
}

GradedSubspace GradedSubspace::full(Field field, int degree) {
  GradedSubspace s(field, degree);
  s.repr_ = SubspaceRepr::kCoMonomial;
  return s;
}

GradedSubspace GradedSubspace::from_monomials(Field field, int degree,
                                              std::vector<Word> words) {
  words = sorted_unique(std::move(words));
  check_degrees(words, degree);
  GradedSubspace s(field, degree);
  s.repr_ = SubspaceRepr::kMonomialSet;
  s.words_ = std::move(words);
  return s;
}

GradedSubspace GradedSubspace::from_echelon(SupportMatrix basis, int degree) {
  check_degrees(basis.support(), degree);
  GradedSubspace s(basis.field(), degree);
  s.repr_ = SubspaceRepr::kEchelonBasis;
  s.basis_ = std::move(basis);
  return s;
}

GradedSubspace GradedSubspace::comonomial(Field field, int degree,
                                          std::vector<Word> excluded,
                                          std::optional<SupportMatrix> correction) {
  excluded = sorted_unique(std::move(excluded));
  check_degrees(excluded, degree);
  GradedSubspace s(field, degree);
  s.repr_ = SubspaceRepr::kCoMonomial;
  s.excluded_ = std::move(excluded);
  if (correction) {
    for (const auto& w : correction->support())
      if (!word_member(s.excluded_, w))
        throw std::invalid_argument("correction must be supported inside the excluded set");
    if (correction->rank() > 0) s.correction_ = std::move(correction);
  }
  s.normalize_comonomial();
  return s;
}

void GradedSubspace::normalize_comonomial() {
  if (repr_ != SubspaceRepr::kCoMonomial || !correction_) return;
  // Rows that are bare unit vectors just mean the word is not really excluded.
  while (true) {
    std::vector<Word> freed;
    for (const auto& row : correction_->rows()) {
      std::size_t nz = 0, col = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (!row[j].is_zero()) {
          ++nz;
          col = j;
        }
      if (nz == 1) freed.push_back(correction_->support()[col]);
    }
    if (freed.empty()) break;
    std::vector<Word> new_excluded = word_difference(excluded_, sorted_unique(freed));
    SupportMatrix next = restrict_rows(*correction_, new_excluded, field_);
    excluded_ = std::move(new_excluded);
    correction_ = std::move(next);
  }
  if (correction_->rank() == 0) correction_.reset();
}

BigInt GradedSubspace::dimension() const {
  switch (repr_) {
    case SubspaceRepr::kMonomialSet:
      return BigInt(words_.size());
    case SubspaceRepr::kEchelonBasis:
      return BigInt(basis_->rank());
    case SubspaceRepr::kCoMonomial:
      return pow3(degree_) - BigInt(excluded_.size()) +
             BigInt(correction_ ? correction_->rank() : 0);
  }
  return 0;
}

const std::vector<Word>& GradedSubspace::monomial_words() const {
  if (repr_ != SubspaceRepr::kMonomialSet)
    throw std::logic_error("not a monomial-set space");
  return words_;
}

const SupportMatrix& GradedSubspace::echelon_basis() const {
  if (repr_ != SubspaceRepr::kEchelonBasis || !basis_)
    throw std::logic_error("not an echelon-basis space");
  return *basis_;
}

const std::vector<Word>& GradedSubspace::excluded_words() const {
  if (repr_ != SubspaceRepr::kCoMonomial)
    throw std::logic_error("not a co-monomial space");
  return excluded_;
}

const SupportMatrix& GradedSubspace::correction() const {
  if (repr_ != SubspaceRepr::kCoMonomial || !correction_)
    throw std::logic_error("co-monomial space without correction");
  return *correction_;
}

bool GradedSubspace::contains(const Poly& f) const {
  if (f.is_zero()) return true;
  if (!f.is_homogeneous() || f.degree() != degree_)
    throw std::invalid_argument("membership query requires a homogeneous element of the right degree");
  switch (repr_) {
    case SubspaceRepr::kMonomialSet: {
      for (const auto& [w, c] : f.terms())
        if (!word_member(words_, w)) return false;
      return true;
    }
    case SubspaceRepr::kEchelonBasis: {
      for (const auto& [w, c] : f.terms())
        if (!basis_->column_of(w)) return false;
      return basis_->contains(f);
    }
    case SubspaceRepr::kCoMonomial: {
      Poly inside(field_);
      for (const auto& [w, c] : f.terms())
        if (word_member(excluded_, w)) inside.add_term(w, c);
      if (inside.is_zero()) return true;
      if (!correction_) return false;
      return correction_->contains(inside);
    }
  }
  return false;
}

std::vector<Poly> GradedSubspace::basis_generators() const {
  std::vector<Poly> out;
  switch (repr_) {
    case SubspaceRepr::kMonomialSet:
      for (const auto& w : words_) out.push_back(Poly::monomial(field_, w));
      return out;
    case SubspaceRepr::kEchelonBasis:
      return basis_->basis_polys();
    case SubspaceRepr::kCoMonomial: {
      if (degree_ > kEnumerateDegreeCap)
        throw std::domain_error("co-monomial basis enumeration capped at degree 10");
      for (const auto& w : all_words(degree_))
        if (!word_member(excluded_, w)) out.push_back(Poly::monomial(field_, w));
      if (correction_)
        for (const auto& p : correction_->basis_polys()) out.push_back(p);
      return out;
    }
  }
  return out;
}

bool GradedSubspace::contains_subspace(const GradedSubspace& other) const {
  if (degree_ != other.degree_) throw std::invalid_argument("degree mismatch");
  if (other.repr_ == SubspaceRepr::kMonomialSet ||
      other.repr_ == SubspaceRepr::kEchelonBasis) {
    for (const auto& p : other.basis_generators())
      if (!contains(p)) return false;
    return true;
  }
  // other is co-monomial: its free monomials are everything off the excluded set
  const auto& xb = other.excluded_;
  switch (repr_) {
    case SubspaceRepr::kMonomialSet:
    case SubspaceRepr::kEchelonBasis: {
      BigInt free_dim = pow3(degree_) - BigInt(xb.size());
      if (free_dim > dimension()) return false;  // dimension bound
      if (degree_ > kEnumerateDegreeCap)
        throw std::domain_error("containment check not representable at this degree");
      for (const auto& p : other.basis_generators())
        if (!contains(p)) return false;
      return true;
    }
    case SubspaceRepr::kCoMonomial: {
      // Words excluded here but free in `other` must be covered by our
      // correction; then every correction row of `other` must reduce to zero.
      for (const auto& w : word_difference(excluded_, xb))
        if (!contains(Poly::monomial(field_, w))) return false;
      if (other.correction_)
        for (const auto& p : other.correction_->basis_polys())
          if (!contains(p)) return false;
      return true;
    }
  }
  return false;
}

bool GradedSubspace::equals(const GradedSubspace& other) const {
  if (degree_ != other.degree_) return false;
  if (dimension() != other.dimension()) return false;
  return contains_subspace(other) && other.contains_subspace(*this);
}

GradedSubspace GradedSubspace::to_echelon() const {
  switch (repr_) {
    case SubspaceRepr::kMonomialSet: {
      SupportMatrix m(field_, words_);
      for (const auto& w : words_) m.insert(Poly::monomial(field_, w));
      return from_echelon(std::move(m), degree_);
    }
    case SubspaceRepr::kEchelonBasis:
      return *this;
    case SubspaceRepr::kCoMonomial: {
      if (degree_ > kEnumerateDegreeCap)
        throw std::domain_error("co-monomial materialization capped at degree 10");
      auto words = all_words(degree_);
      SupportMatrix m(field_, words);
      for (const auto& p : basis_generators()) m.insert(p);
      return from_echelon(std::move(m), degree_);
    }
  }
  throw std::logic_error("unreachable");
}

std::string GradedSubspace::describe() const {
  switch (repr_) {
    case SubspaceRepr::kMonomialSet:
      return "monomials(" + std::to_string(words_.size()) + ")";
    case SubspaceRepr::kEchelonBasis:
      return "echelon(rank " + std::to_string(basis_->rank()) + ")";
    case SubspaceRepr::kCoMonomial:
      return "comonomial(excluded " + std::to_string(excluded_.size()) + ", correction " +
             std::to_string(correction_ ? correction_->rank() : 0) + ")";
  }
  return "?";
}

GradedSubspace span(const std::vector<Poly>& vectors, int degree, Field field) {
  bool monomial = true;
  std::vector<Word> words;
  std::set<Word> support;
  for (const auto& v : vectors) {
    if (v.is_zero()) continue;
    if (!v.is_homogeneous() || v.degree() != degree)
      throw std::invalid_argument("span requires homogeneous vectors of the given degree");
    if (v.term_count() == 1)
      words.push_back(v.terms().begin()->first);
    else
      monomial = false;
    for (const auto& [w, c] : v.terms()) support.insert(w);
  }
  if (monomial) return GradedSubspace::from_monomials(field, degree, std::move(words));
  SupportMatrix m(field, std::vector<Word>(support.begin(), support.end()));
  for (const auto& v : vectors)
    if (!v.is_zero()) m.insert(v);
  return GradedSubspace::from_echelon(std::move(m), degree);
}

GradedSubspace sum(const GradedSubspace& a, const GradedSubspace& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch in sum");
  const Field& k = a.field();
  int n = a.degree();
  auto ra = a.repr(), rb = b.repr();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;

  if (ra == SubspaceRepr::kCoMonomial || rb == SubspaceRepr::kCoMonomial) {
    const GradedSubspace& c = (ra == SubspaceRepr::kCoMonomial) ? a : b;
    const GradedSubspace& o = (ra == SubspaceRepr::kCoMonomial) ? b : a;
    if (o.repr() == SubspaceRepr::kCoMonomial) {
      auto x = word_intersection(c.excluded_, o.excluded_);
      SupportMatrix corr(k, x);
      if (c.correction_)
        for (const auto& p : c.correction_->basis_polys()) {
          Poly q(k);
          for (const auto& [w, cf] : p.terms())
            if (word_member(x, w)) q.add_term(w, cf);
          if (!q.is_zero()) corr.insert(q);
        }
      if (o.correction_)
        for (const auto& p : o.correction_->basis_polys()) {
          Poly q(k);
          for (const auto& [w, cf] : p.terms())
            if (word_member(x, w)) q.add_term(w, cf);
          if (!q.is_zero()) corr.insert(q);
        }
      return GradedSubspace::comonomial(k, n, std::move(x), std::move(corr));
    }
    // co-monomial + finitely generated
    std::vector<Word> x = c.excluded_;
    if (o.repr() == SubspaceRepr::kMonomialSet)
      x = word_difference(x, o.monomial_words());
    SupportMatrix corr(k, x);
    if (c.correction_)
      for (const auto& p : c.correction_->basis_polys()) {
        Poly q(k);
        for (const auto& [w, cf] : p.terms())
          if (word_member(x, w)) q.add_term(w, cf);
        if (!q.is_zero()) corr.insert(q);
      }
    for (const auto& p : o.basis_generators()) {
      Poly q(k);
      for (const auto& [w, cf] : p.terms())
        if (word_member(x, w)) q.add_term(w, cf);
      if (!q.is_zero()) corr.insert(q);
    }
    return GradedSubspace::comonomial(k, n, std::move(x), std::move(corr));
  }

  if (ra == SubspaceRepr::kMonomialSet && rb == SubspaceRepr::kMonomialSet)
    return GradedSubspace::from_monomials(k, n, word_union(a.monomial_words(), b.monomial_words()));

  // general finitely supported case
  std::set<Word> support;
  auto gens_a = a.basis_generators();
  auto gens_b = b.basis_generators();
  for (const auto& p : gens_a)
    for (const auto& [w, c] : p.terms()) support.insert(w);
  for (const auto& p : gens_b)
    for (const auto& [w, c] : p.terms()) support.insert(w);
  SupportMatrix m(k, std::vector<Word>(support.begin(), support.end()));
  for (const auto& p : gens_a) m.insert(p);
  for (const auto& p : gens_b) m.insert(p);
  return GradedSubspace::from_echelon(std::move(m), n);
}

GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch in intersect");
  const Field& k = a.field();
  int n = a.degree();
  auto ra = a.repr(), rb = b.repr();

  if (ra == SubspaceRepr::kMonomialSet && rb == SubspaceRepr::kMonomialSet)
    return GradedSubspace::from_monomials(k, n,
                                          word_intersection(a.monomial_words(), b.monomial_words()));

  if (ra == SubspaceRepr::kCoMonomial && rb == SubspaceRepr::kCoMonomial) {
    auto x = word_union(a.excluded_words(), b.excluded_words());
    // Elements supported inside x that satisfy both membership constraints.
    SupportMatrix sa(k, x);
    for (const auto& w : word_difference(x, a.excluded_words()))
      sa.insert(Poly::monomial(k, w));
    if (a.correction_)
      for (const auto& p : a.correction_->basis_polys()) sa.insert(p);

    SupportMatrix sb(k, x);
    for (const auto& w : word_difference(x, b.excluded_words()))
      sb.insert(Poly::monomial(k, w));
    if (b.correction_)
      for (const auto& p : b.correction_->basis_polys()) sb.insert(p);

    SupportMatrix corr = intersect_rows(sa, sb);
    return GradedSubspace::comonomial(k, n, std::move(x), std::move(corr));
  }

  if (ra == SubspaceRepr::kCoMonomial || rb == SubspaceRepr::kCoMonomial) {
    const GradedSubspace& c = (ra == SubspaceRepr::kCoMonomial) ? a : b;
    const GradedSubspace& o = (ra == SubspaceRepr::kCoMonomial) ? b : a;
    // Everything in the intersection is supported on o's support.
    std::set<Word> ysup;
    auto gens = o.basis_generators();
    for (const auto& p : gens)
      for (const auto& [w, cf] : p.terms()) ysup.insert(w);
    for (const auto& w : c.excluded_words()) ysup.insert(w);
    std::vector<Word> y(ysup.begin(), ysup.end());
    SupportMatrix so(k, y);
    for (const auto& p : gens) so.insert(p);
    SupportMatrix sc(k, y);
    for (const auto& w : word_difference(y, c.excluded_words()))
      sc.insert(Poly::monomial(k, w));
    if (c.correction_)
      for (const auto& p : c.correction_->basis_polys()) sc.insert(p);
    SupportMatrix inter = intersect_rows(so, sc);
    // keep a monomial representation when it is one
    bool monomial = true;
    std::vector<Word> words;
    for (const auto& p : inter.basis_polys()) {
      if (p.term_count() == 1 && p.terms().begin()->second == fe_one(k))
        words.push_back(p.terms().begin()->first);
      else
        monomial = false;
    }
    if (monomial) return GradedSubspace::from_monomials(k, n, std::move(words));
    return GradedSubspace::from_echelon(std::move(inter), n);
  }

  // finitely supported pair
  std::set<Word> ysup;
  auto gens_a = a.basis_generators();
  auto gens_b = b.basis_generators();
  for (const auto& p : gens_a)
    for (const auto& [w, c] : p.terms()) ysup.insert(w);
  for (const auto& p : gens_b)
    for (const auto& [w, c] : p.terms()) ysup.insert(w);
  std::vector<Word> y(ysup.begin(), ysup.end());
  SupportMatrix sa(k, y), sb(k, y);
  for (const auto& p : gens_a) sa.insert(p);
  for (const auto& p : gens_b) sb.insert(p);
  SupportMatrix inter = intersect_rows(sa, sb);
  bool monomial = true;
  std::vector<Word> words;
  for (const auto& p : inter.basis_polys()) {
    if (p.term_count() == 1 && p.terms().begin()->second == fe_one(k))
      words.push_back(p.terms().begin()->first);
    else
      monomial = false;
  }
  if (monomial) return GradedSubspace::from_monomials(k, n, std::move(words));
  return GradedSubspace::from_echelon(std::move(inter), n);
}

GradedSubspace product(const GradedSubspace& a, const GradedSubspace& b) {
  const Field& k = a.field();
  int n = a.degree() + b.degree();
  if (a.is_zero() || b.is_zero()) return GradedSubspace::zero(k, n);

  auto full = [](const GradedSubspace& s) {
    return s.repr() == SubspaceRepr::kCoMonomial && s.excluded_words().empty();
  };
  if (full(a) && full(b)) return GradedSubspace::full(k, n);

  if (a.repr() == SubspaceRepr::kMonomialSet && b.repr() == SubspaceRepr::kMonomialSet) {
    std::vector<Word> words;
    words.reserve(a.monomial_words().size() * b.monomial_words().size());
    for (const auto& u : a.monomial_words())
      for (const auto& v : b.monomial_words()) words.push_back(u * v);
    return GradedSubspace::from_monomials(k, n, std::move(words));
  }

  auto enumerable = [](const GradedSubspace& s) {
    return s.repr() != SubspaceRepr::kCoMonomial ||
           s.degree() <= kEnumerateDegreeCap;
  };
  if ((full(a) || enumerable(a)) && (full(b) || enumerable(b)) &&
      !(full(a) || full(b))) {
    auto gens_a = a.basis_generators();
    auto gens_b = b.basis_generators();
    std::vector<Poly> prods;
    prods.reserve(gens_a.size() * gens_b.size());
    for (const auto& p : gens_a)
      for (const auto& q : gens_b) prods.push_back(p * q);
    return span(prods, n, k);
  }
  if (full(a) || full(b)) {
    const GradedSubspace& m = full(a) ? b : a;
    int fdeg = full(a) ? a.degree() : b.degree();
    if (m.repr() == SubspaceRepr::kMonomialSet && fdeg <= kEnumerateDegreeCap) {
      std::vector<Word> words;
      for (const auto& h : all_words(fdeg))
        for (const auto& w : m.monomial_words())
          words.push_back(full(a) ? h * w : w * h);
      return GradedSubspace::from_monomials(k, n, std::move(words));
    }
  }
  throw std::domain_error("product not materializable in this representation");
}

GradedSubspace complement(const GradedSubspace& a, const GradedSubspace& within,
                          ComplementRule rule) {
  if (a.degree() != within.degree()) throw std::invalid_argument("degree mismatch in complement");
  const Field& k = a.field();
  int n = a.degree();
  if (!within.contains_subspace(a))
    throw std::invalid_argument("complement requires the space to lie inside the ambient one");

  if (rule == ComplementRule::kMonomialLex &&
      a.repr() == SubspaceRepr::kMonomialSet &&
      within.repr() == SubspaceRepr::kMonomialSet) {
    return GradedSubspace::from_monomials(
        k, n, word_difference(within.monomial_words(), a.monomial_words()));
  }

  // Greedy: extend an echelon copy of `a` through the ambient generators in
  // canonical order; what got added spans the complement.
  std::vector<Poly> ambient_gens = within.basis_generators();
  std::set<Word> support;
  for (const auto& p : ambient_gens)
    for (const auto& [w, c] : p.terms()) support.insert(w);
  SupportMatrix work(k, std::vector<Word>(support.begin(), support.end()));
  for (const auto& p : a.basis_generators()) work.insert(p);
  std::vector<Poly> added;
  for (const auto& p : ambient_gens)
    if (work.insert(p)) added.push_back(p);
  return span(added, n, k);
}

std::vector<Word> all_words(int degree) {
  if (degree > kEnumerateDegreeCap) throw std::domain_error("word enumeration capped at degree 10");
  std::vector<Word> out;
  BigInt total = pow3(degree);
  out.reserve(static_cast<std::size_t>(total));
  for (BigInt i = 0; i < total; ++i) out.push_back(Word::from_index(degree, i));
  return out;
}

Poly random_element(const GradedSubspace& s, std::mt19937_64& rng, int terms) {
  const Field& k = s.field();
  Poly out(k);
  if (s.is_zero()) return out;
  auto random_coeff = [&] {
    if (k.kind() == Field::Kind::kPrime)
      return fe_from_int(k, 1 + static_cast<std::int64_t>(
                                 rng() % static_cast<std::uint64_t>(
                                     k.characteristic() > 2 ? k.characteristic() - 1 : 1)));
    return fe_from_int(k, 1 + static_cast<std::int64_t>(rng() % 5));
  };
  switch (s.repr()) {
    case SubspaceRepr::kMonomialSet: {
      const auto& ws = s.monomial_words();
      for (int t = 0; t < terms; ++t)
        out.add_term(ws[rng() % ws.size()], random_coeff());
      return out;
    }
    case SubspaceRepr::kEchelonBasis: {
      auto basis = s.echelon_basis().basis_polys();
      for (int t = 0; t < terms; ++t)
        out = out + basis[rng() % basis.size()].scaled(random_coeff());
      return out;
    }
    case SubspaceRepr::kCoMonomial: {
      const auto& excluded = s.excluded_words();
      int degree = s.degree();
      for (int t = 0; t < terms; ++t) {
        for (int attempt = 0; attempt < 64; ++attempt) {
          std::string w;
          for (int i = 0; i < degree; ++i) w.push_back(static_cast<char>('x' + rng() % 3));
          Word cand = Word::parse(w);
          if (!std::binary_search(excluded.begin(), excluded.end(), cand)) {
            out.add_term(cand, random_coeff());
            break;
          }
        }
      }
      try {
        auto rows = s.correction().basis_polys();
        if (!rows.empty() && rng() % 2 == 0)
          out = out + rows[rng() % rows.size()].scaled(random_coeff());
      } catch (const std::logic_error&) {
      }
      return out;
    }
  }
  return out;
}

}  // namespace gkforge
