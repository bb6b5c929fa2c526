#pragma once

#include "frob/symbolic/parse.hpp"
#include "frob/systems/dsl.hpp"

#include <string>

namespace frob::test {

inline const std::string kFixtures = FROB_FIXTURE_DIR;

inline System fixture(const std::string& name) { return load_system(kFixtures + "/" + name + ".dsys"); }

inline bool expr_is(const Expr& e, const char* text) { return is_zero(e - parse_expr(text, e.scope())); }

inline bool field_is(const VectorField& v, const char* text) { return equivalent(v, parse_field(text, v.scope())); }

inline bool form_is(const KForm& w, const char* text) { return equivalent(w, parse_form(text, w.scope())); }

}  // namespace frob::test
