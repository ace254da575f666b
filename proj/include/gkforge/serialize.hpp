#pragma once

#include <json.hpp>

#include "gkforge/schedule.hpp"
#include "gkforge/subspace.hpp"

namespace gkforge {

/// Versioned subspace schema:
///   {format:1, degree, repr:"monomials"|"echelon"|"comonomial",
///    words:[...], excluded:[...], rows:[[[word,coeff],...],...]}
nlohmann::json subspace_to_json(const GradedSubspace& s);
GradedSubspace subspace_from_json(const nlohmann::json& j, const Field& field);

/// Schedule schema: {"field":{"kind":"gf","p":2}, "onset":5, "z_set":[...],
/// "v_choice":"lex", "f_provider":"none"}
nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json field_to_json(const Field& f);
Field field_from_json(const nlohmann::json& j);

}  // namespace gkforge
