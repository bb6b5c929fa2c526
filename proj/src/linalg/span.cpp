#include "frob/linalg/span.hpp"

#include "frob/errors.hpp"

#include <algorithm>

namespace frob {

namespace {

ExprMatrix stacked(const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& generators,
                   const ScopePtr& scope) {
    std::vector<std::vector<Expr>> rows = generators;
    rows.push_back(target);
    return ExprMatrix::from_rows(scope, rows);
}

}  // namespace

SpanCertificate in_span(const std::vector<Expr>& target, const std::vector<std::vector<Expr>>& generators,
                        const ScopePtr& scope) {
    SpanCertificate cert;
    const std::size_t k = generators.size();
    cert.coefficients.assign(k, Expr::constant(scope, 0));

    bool target_zero = true;
    for (const auto& e : target) target_zero = target_zero && e.is_zero();
    if (target_zero) return cert;

    RankResult full = generic_rank(stacked(target, generators, scope));
    RankResult gen{};
    if (k) gen = generic_rank(ExprMatrix::from_rows(scope, generators));
    cert.excluded.merge(gen.excluded);

    if (full.rank > gen.rank) {
        cert.kind = SpanCertificate::Kind::NotMember;
        cert.minor_rows = full.pivot_rows;
        cert.minor_cols = full.pivot_cols;
        std::sort(cert.minor_rows.begin(), cert.minor_rows.end());
        std::sort(cert.minor_cols.begin(), cert.minor_cols.end());
        cert.minor = determinant(stacked(target, generators, scope).submatrix(cert.minor_rows, cert.minor_cols));
        if (cert.minor.is_zero()) throw Error("internal: witness minor vanished");
        cert.excluded.merge(full.excluded);
        return cert;
    }

    // Solve sum_i c_i g_i = target over the independent generators only.
    std::vector<std::size_t> basis = gen.pivot_rows;
    std::sort(basis.begin(), basis.end());
    const std::size_t n = target.size();
    ExprMatrix a(scope, n, basis.size());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t b = 0; b < basis.size(); ++b) a(j, b) = generators[basis[b]][j];
    std::vector<Expr> c = solve(a, target, std::nullopt, &cert.excluded);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        cert.coefficients[basis[b]] = c[b];
        cert.excluded.add_factor(Expr::from_poly(scope, c[b].denominator()));
    }
    if (!check_certificate(cert, target, generators, scope)) throw Error("internal: span coefficients do not verify");
    return cert;
}

bool check_certificate(const SpanCertificate& cert, const std::vector<Expr>& target,
                       const std::vector<std::vector<Expr>>& generators, const ScopePtr& scope) {
    if (cert.member()) {
        if (cert.coefficients.size() != generators.size()) return false;
        for (std::size_t j = 0; j < target.size(); ++j) {
            Expr s = -target[j];
            for (std::size_t i = 0; i < generators.size(); ++i)
                if (!cert.coefficients[i].is_zero() && !generators[i][j].is_zero())
                    s += cert.coefficients[i] * generators[i][j];
            if (!s.is_zero()) return false;
        }
        return true;
    }
    if (cert.minor_rows.size() != cert.minor_cols.size()) return false;
    const auto m = stacked(target, generators, scope).submatrix(cert.minor_rows, cert.minor_cols);
    if (determinant(m).is_zero()) return false;
    // A nonzero minor containing the target row is sound only if the
    // generators have no larger rank than the minor without the target.
    bool has_target = false;
    for (auto r : cert.minor_rows) has_target = has_target || r == generators.size();
    if (!has_target) return false;
    std::size_t gen_rank = generators.empty() ? 0 : generic_rank(ExprMatrix::from_rows(scope, generators)).rank;
    return gen_rank < cert.minor_rows.size();
}

}  // namespace frob
