#pragma once

#include "frob/linalg/matrix.hpp"

#include <vector>

namespace frob {

// Membership of a row vector in the span of generator rows.
// Member: coefficients c with sum_i c_i * g_i == target (checked by is_zero).
// NotMember: a nonzero minor of the stacked matrix [generators; target];
// row index == generators.size() is the target row.
struct SpanCertificate {
    enum class Kind { Member, NotMember };
    Kind kind = Kind::Member;
    std::vector<Expr> coefficients;
    std::vector<std::size_t> minor_rows;
    std::vector<std::size_t> minor_cols;
    Expr minor;
    Locus excluded;

    bool member() const { return kind == Kind::Member; }
};

SpanCertificate in_span(const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& generators,
                        const ScopePtr& scope);

// Recomputes the certificate claim from scratch.
bool check_certificate(const SpanCertificate& cert, const std::vector<Expr>& target,
                       const std::vector<std::vector<Expr>>& generators, const ScopePtr& scope);

}  // namespace frob
