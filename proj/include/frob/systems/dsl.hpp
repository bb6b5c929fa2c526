#pragma once

#include "frob/systems/system.hpp"

#include <string>
#include <string_view>

namespace frob {

// Line-oriented input format:
//   kind: td | pde | pfaff
//   indep: t1 t2          dep: x1 x2            (td)
//   vars: x1 x2 x3                              (pde, pfaff)
//   eq x1: <expr> | <expr>                      (td, one column per indep var)
//   op L1: <expr>*@x1 + ...                     (pde)
//   pivots: x1 x2                               (pde in normal form, optional)
//   form w1: <expr>*d(x1) + ...                 (pfaff)
//   complete w3: <expr>*d(x3) + ...             (pfaff completion, optional)
//   name: <text>                                (optional)
// '#' starts a comment. Errors are ParseError with line and column.
System parse_system(std::string_view text, const std::string& file = "");
System load_system(const std::string& path);

std::string serialize_dsl(const System& s);

}  // namespace frob
