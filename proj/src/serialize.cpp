#include "gkforge/serialize.hpp"

#include <stdexcept>

namespace gkforge {

using nlohmann::json;

json field_to_json(const Field& f) {
  json j;
  if (f.kind() == Field::Kind::kPrime) {
    j["kind"] = "gf";
    j["p"] = f.characteristic();
  } else {
    j["kind"] = "q";
  }
  return j;
}

Field field_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gf") return Field::gf(j.at("p").get<std::int64_t>());
  if (kind == "q") return Field::rationals();
  throw std::invalid_argument("unknown field kind: " + kind);
}

namespace {

json words_to_json(const std::vector<Word>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(w.str());
  return a;
}

std::vector<Word> words_from_json(const json& a) {
  std::vector<Word> out;
  for (const auto& s : a) out.push_back(Word::parse(s.get<std::string>()));
  return out;
}

json rows_to_json(const Field& field, const SupportMatrix& m) {
  json rows = json::array();
  for (const auto& p : m.basis_polys()) {
    json row = json::array();
    for (const auto& [w, c] : p.terms())
      row.push_back(json::array({w.str(), fe_to_string(field, c)}));
    rows.push_back(row);
  }
  return rows;
}

std::vector<Poly> rows_from_json(const json& rows, const Field& field) {
  std::vector<Poly> out;
  for (const auto& row : rows) {
    Poly p(field);
    for (const auto& entry : row)
      p.add_term(Word::parse(entry.at(0).get<std::string>()),
                 fe_parse(field, entry.at(1).get<std::string>()));
    out.push_back(p);
  }
  return out;
}

}  // namespace

json subspace_to_json(const GradedSubspace& s) {
  json j;
  j["format"] = 1;
  j["degree"] = s.degree();
  switch (s.repr()) {
    case SubspaceRepr::kMonomialSet:
      j["repr"] = "monomials";
      j["words"] = words_to_json(s.monomial_words());
      break;
    case SubspaceRepr::kEchelonBasis:
      j["repr"] = "echelon";
      j["rows"] = rows_to_json(s.field(), s.echelon_basis());
      break;
    case SubspaceRepr::kCoMonomial: {
      j["repr"] = "comonomial";
      j["excluded"] = words_to_json(s.excluded_words());
      bool has_corr = false;
      try {
        (void)s.correction();
        has_corr = true;
      } catch (const std::logic_error&) {
      }
      j["rows"] = has_corr ? rows_to_json(s.field(), s.correction()) : json::array();
      break;
    }
  }
  return j;
}

GradedSubspace subspace_from_json(const json& j, const Field& field) {
  if (j.at("format").get<int>() != 1)
    throw std::invalid_argument("unsupported subspace format version");
  int degree = j.at("degree").get<int>();
  std::string repr = j.at("repr").get<std::string>();
  if (repr == "monomials")
    return GradedSubspace::from_monomials(field, degree, words_from_json(j.at("words")));
  if (repr == "echelon") {
    auto polys = rows_from_json(j.at("rows"), field);
    return span(polys, degree, field);
  }
  if (repr == "comonomial") {
    auto excluded = words_from_json(j.at("excluded"));
    SupportMatrix corr(field, excluded);
    for (const auto& p : rows_from_json(j.value("rows", json::array()), field)) corr.insert(p);
    return GradedSubspace::comonomial(field, degree, std::move(excluded), std::move(corr));
  }
  throw std::invalid_argument("unknown subspace repr: " + repr);
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["field"] = field_to_json(s.field);
  j["onset"] = s.onset;
  j["z_set"] = s.z_set;
  j["v_choice"] = s.v_choice == ComplementRule::kMonomialLex ? "lex" : "echelon-greedy";
  j["f_provider"] = s.f_provider;
  return j;
}

Schedule schedule_from_json(const json& j) {
  Schedule s;
  if (j.contains("field")) s.field = field_from_json(j.at("field"));
  s.onset = j.value("onset", 5);
  if (j.contains("z_set"))
    for (const auto& i : j.at("z_set")) s.z_set.insert(i.get<int>());
  std::string vc = j.value("v_choice", "lex");
  if (vc == "lex")
    s.v_choice = ComplementRule::kMonomialLex;
  else if (vc == "echelon-greedy")
    s.v_choice = ComplementRule::kEchelonGreedy;
  else
    throw std::invalid_argument("unknown v_choice: " + vc);
  s.f_provider = j.value("f_provider", "none");
  s.validate();
  return s;
}

}  // namespace gkforge
