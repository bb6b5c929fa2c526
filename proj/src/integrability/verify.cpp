#include "frob/integrability/verify.hpp"

#include "frob/systems/convert.hpp"

namespace frob {

namespace {

void residual_check(IntegralCertificate& c, const std::vector<VectorField>& ops, const std::vector<std::string>& labels,
                    std::uint64_t seed) {
    c.labels = labels;
    c.valid = true;
    for (const auto& op : ops) {
        Expr r = apply(op, c.integral);
        if (!is_zero(r) && c.valid) {
            c.valid = false;
            c.witness = nonzero_witness(r, seed);
        }
        c.residuals.push_back(std::move(r));
    }
}

}  // namespace

IntegralCertificate verify_first_integral(const System& s, const Expr& integral, std::uint64_t seed) {
    IntegralCertificate c;
    const ScopePtr& scope = s.scope();
    c.integral = rescope(integral, scope);
    switch (s.kind()) {
        case SystemKind::Td: {
            const TdSystem& td = s.td();
            std::vector<std::string> labels;
            for (std::size_t j = 0; j < td.m; ++j) labels.push_back("X" + std::to_string(j + 1));
            residual_check(c, td_operators(td), labels, seed);
            break;
        }
        case SystemKind::Pde:
            residual_check(c, s.pde().operators, s.pde().labels, seed);
            break;
        case SystemKind::Pfaff: {
            const PfaffSystem& pf = s.pfaff();
            std::vector<std::vector<Expr>> rows;
            for (const auto& w : pf.forms) rows.push_back(w.coefficients());
            c.labels = pf.labels;
            c.cert = in_span(differential(c.integral).coefficients(), rows, scope);
            c.valid = c.cert->member();
            if (!c.valid) c.witness = nonzero_witness(c.cert->minor, seed);
            break;
        }
    }
    if (c.witness) c.witness_text = print_point(*scope, *c.witness);
    return c;
}

Independence functional_independence(const std::vector<Expr>& functions, const ScopePtr& scope) {
    Independence r;
    if (functions.empty()) {
        r.independent = true;
        return r;
    }
    ExprMatrix j(scope, functions.size(), scope->size());
    for (std::size_t i = 0; i < functions.size(); ++i) {
        Expr f = rescope(functions[i], scope);
        for (std::size_t v = 0; v < scope->size(); ++v) j(i, v) = differentiate(f, v);
    }
    RankResult rr = generic_rank(j);
    r.rank = rr.rank;
    r.independent = rr.rank == functions.size();
    r.excluded = rr.excluded;
    return r;
}

}  // namespace frob
