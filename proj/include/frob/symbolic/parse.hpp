#pragma once

#include "frob/symbolic/expr.hpp"

#include <map>
#include <string_view>
#include <vector>

namespace frob {

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := rational | varid | 'exp' '(' expr ')' | '(' expr ')' | '-' base
// Whitespace is ignored and '#' starts a comment running to end of line.
// Errors are ParseError with a 1-based line/column; `line`/`column` give the
// position of text[0] when the text is a slice of a larger file.
Expr parse_expr(std::string_view text, const ScopePtr& scope, std::size_t line = 1, std::size_t column = 1);

enum class BasisKind { Vector, Form };

// Same grammar with extra base atoms: '@' varid (Vector) or
// 'd' '(' varid (',' varid)* ')' (Form, sorted into increasing order with sign).
// The whole text must be linear in the basis atoms. Keys are variable index tuples.
using LinearTerms = std::map<std::vector<std::size_t>, Expr>;
LinearTerms parse_linear(std::string_view text, const ScopePtr& scope, BasisKind kind, std::size_t line = 1,
                         std::size_t column = 1);

}  // namespace frob
