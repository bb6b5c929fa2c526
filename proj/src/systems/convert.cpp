#include "frob/systems/convert.hpp"

#include "frob/errors.hpp"
#include "frob/linalg/span.hpp"

#include <algorithm>

namespace frob {

std::vector<VectorField> td_operators(const TdSystem& td) {
    std::vector<VectorField> ops;
    for (std::size_t j = 0; j < td.m; ++j) {
        VectorField v = VectorField::coordinate(td.scope, td.indep_index(j));
        for (std::size_t i = 0; i < td.n; ++i) v.set(td.dep_index(i), td.x(i, j));
        ops.push_back(std::move(v));
    }
    return ops;
}

PdeSystem td_to_pde(const TdSystem& td, AutonomyMode mode) {
    PdeSystem pde{td.scope, {}, {}, std::nullopt};
    if (mode == AutonomyMode::Nonautonomous) {
        pde.operators = td_operators(td);
        std::vector<std::size_t> piv;
        for (std::size_t j = 0; j < td.m; ++j) {
            pde.labels.push_back("X" + std::to_string(j + 1));
            piv.push_back(td.indep_index(j));
        }
        pde.pivots = piv;
        return pde;
    }
    for (std::size_t i = 0; i < td.n; ++i)
        for (std::size_t j = 0; j < td.m; ++j)
            for (std::size_t t = 0; t < td.m; ++t)
                if (td.x(i, j).depends_on(td.indep_index(t)))
                    throw ConversionError("autonomous conversion needs coefficients free of the independent variables");
    auto scope = Scope::create(td.dep_names());
    pde.scope = scope;
    for (std::size_t j = 0; j < td.m; ++j) {
        VectorField v(scope);
        for (std::size_t i = 0; i < td.n; ++i) v.set(i, rescope(td.x(i, j), scope));
        pde.operators.push_back(std::move(v));
        pde.labels.push_back("X" + std::to_string(j + 1));
    }
    return pde;
}

PdeSystem pde_normalize(const PdeSystem& pde, const std::optional<std::vector<std::string>>& pivots, Locus* excluded) {
    const std::size_t m = pde.operators.size();
    ExprMatrix u = pde.matrix();
    std::vector<std::size_t> piv;
    if (pivots) {
        if (pivots->size() != m) throw ConversionError("need one pivot variable per operator");
        for (const auto& name : *pivots) piv.push_back(pde.scope->require(name));
    } else {
        RankResult r = generic_rank(u);
        if (r.rank < m) throw RankDeficientError("operators are linearly dependent");
        piv = r.pivot_cols;
        std::sort(piv.begin(), piv.end());
    }
    std::vector<std::size_t> rows(m);
    for (std::size_t j = 0; j < m; ++j) rows[j] = j;
    ExprMatrix up = u.submatrix(rows, piv);
    Locus local;
    ExprMatrix inv = invert(up, &local);
    local.add_pivot(determinant(up));
    if (excluded) excluded->merge(local);
    ExprMatrix nm = inv * u;
    PdeSystem out{pde.scope, {}, {}, piv};
    for (std::size_t j = 0; j < m; ++j) {
        VectorField v(pde.scope);
        for (std::size_t k = 0; k < pde.scope->size(); ++k) v.set(k, nm(j, k));
        out.operators.push_back(std::move(v));
        out.labels.push_back("N" + std::to_string(j + 1));
    }
    return out;
}

TdSystem normal_pde_to_td(const PdeSystem& pde) {
    if (!pde.pivots) throw ConversionError("system is not in normal form (no pivots)");
    const auto& piv = *pde.pivots;
    for (std::size_t j = 0; j < piv.size(); ++j)
        for (std::size_t k = 0; k < piv.size(); ++k) {
            Expr c = pde.operators[j].component(piv[k]);
            if (!(j == k ? c.is_one() : c.is_zero())) throw ConversionError("system is not in normal form");
        }
    std::vector<std::string> indep, dep;
    std::vector<std::size_t> rest;
    for (auto p : piv) indep.push_back(pde.scope->name(p));
    for (std::size_t k = 0; k < pde.scope->size(); ++k)
        if (std::find(piv.begin(), piv.end(), k) == piv.end()) {
            dep.push_back(pde.scope->name(k));
            rest.push_back(k);
        }
    TdSystem td = TdSystem::make(indep, dep);
    for (std::size_t s = 0; s < rest.size(); ++s)
        for (std::size_t j = 0; j < piv.size(); ++j)
            td.x(s, j) = rescope(pde.operators[j].component(rest[s]), td.scope);
    return td;
}

PfaffSystem td_to_pfaff(const TdSystem& td) {
    PfaffSystem pf{td.scope, {}, {}, {}, {}};
    for (std::size_t i = 0; i < td.n; ++i) {
        KForm w = KForm::coordinate(td.scope, td.dep_index(i));
        for (std::size_t j = 0; j < td.m; ++j) w.set({td.indep_index(j)}, -td.x(i, j));
        pf.forms.push_back(std::move(w));
        pf.labels.push_back("eta" + std::to_string(i + 1));
    }
    return pf;
}

TdSystem pfaff_to_td(const PfaffSystem& pf, const std::optional<std::vector<std::string>>& pivots, Locus* excluded) {
    const std::size_t m = pf.forms.size(), n = pf.scope->size();
    ExprMatrix w = pf.matrix();
    std::vector<std::size_t> piv;
    if (pivots) {
        if (pivots->size() != m) throw ConversionError("need one pivot variable per form");
        for (const auto& name : *pivots) {
            const std::size_t i = pf.scope->require(name);
            if (std::find(piv.begin(), piv.end(), i) != piv.end()) throw ConversionError("duplicate pivot " + name);
            piv.push_back(i);
        }
    } else {
        RankResult r = generic_rank(w);
        if (r.rank < m) throw RankDeficientError("forms are linearly dependent");
        piv = r.pivot_cols;
        std::sort(piv.begin(), piv.end());
    }
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
        if (std::find(piv.begin(), piv.end(), k) == piv.end()) rest.push_back(k);
    std::vector<std::size_t> rows(m);
    for (std::size_t j = 0; j < m; ++j) rows[j] = j;
    Locus local;
    ExprMatrix wp = w.submatrix(rows, piv);
    ExprMatrix inv = invert(wp, &local);
    local.add_pivot(determinant(wp));
    if (excluded) excluded->merge(local);
    ExprMatrix x = inv * w.submatrix(rows, rest);

    std::vector<std::string> indep, dep;
    for (auto k : rest) indep.push_back(pf.scope->name(k));
    for (auto k : piv) dep.push_back(pf.scope->name(k));
    TdSystem td = TdSystem::make(indep, dep);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < rest.size(); ++j) td.x(i, j) = rescope(-x(i, j), td.scope);
    return td;
}

Contragredient pfaff_contragredient(const PfaffSystem& pf) {
    const std::size_t m = pf.forms.size(), n = pf.scope->size();
    Contragredient c{{}, ExprMatrix(pf.scope, n, n), ExprMatrix(pf.scope, n, n), {}, {}, {}};
    if (!pf.completion.empty()) {
        if (pf.completion.size() != n - m) throw ConversionError("completion has the wrong number of forms");
        c.completion = pf.completion;
    } else {
        RankResult r = generic_rank(pf.matrix());
        if (r.rank < m) throw RankDeficientError("forms are linearly dependent");
        for (std::size_t k = 0; k < n; ++k)
            if (std::find(r.pivot_cols.begin(), r.pivot_cols.end(), k) == r.pivot_cols.end())
                c.completion.push_back(KForm::coordinate(pf.scope, k));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const KForm& w = i < m ? pf.forms[i] : c.completion[i - m];
        for (std::size_t k = 0; k < n; ++k) c.extended(i, k) = w.coefficient({k});
    }
    c.inverse = invert(c.extended, &c.excluded);
    c.excluded.add_pivot(determinant(c.extended));
    c.pde.scope = pf.scope;
    for (std::size_t i = 0; i < n; ++i) {
        VectorField g(pf.scope);
        for (std::size_t k = 0; k < n; ++k) g.set(k, c.inverse(k, i));
        c.operators.push_back(g);
        if (i >= m) {
            c.pde.operators.push_back(g);
            c.pde.labels.push_back("G" + std::to_string(i + 1));
        }
    }
    return c;
}

PfaffSystem pfaff_reduce_by_integrals(const PfaffSystem& pf, const std::vector<Expr>& integrals, Locus* excluded) {
    if (integrals.empty()) return pf;
    const std::size_t m = pf.forms.size(), k = integrals.size();
    std::vector<std::vector<Expr>> rows;
    for (const auto& w : pf.forms) rows.push_back(w.coefficients());
    ExprMatrix b(pf.scope, k, m);
    std::vector<KForm> dfs;
    for (std::size_t xi = 0; xi < k; ++xi) {
        KForm df = differential(integrals[xi]);
        SpanCertificate cert = in_span(df.coefficients(), rows, pf.scope);
        if (!cert.member())
            throw ConversionError("'" + to_string(integrals[xi]) + "' is not a first integral of the system");
        if (excluded) excluded->merge(cert.excluded);
        for (std::size_t j = 0; j < m; ++j) b(xi, j) = cert.coefficients[j];
        dfs.push_back(std::move(df));
    }
    RankResult r = generic_rank(b);
    if (r.rank < k) throw ConversionError("integrals are functionally dependent on the system");
    if (excluded) excluded->merge(r.excluded);
    std::vector<std::size_t> piv = r.pivot_cols;
    std::sort(piv.begin(), piv.end());

    PfaffSystem out{pf.scope, {}, {}, {}, {}};
    for (std::size_t xi = 0; xi < k; ++xi) {
        out.forms.push_back(dfs[xi]);
        out.labels.push_back("dF" + std::to_string(xi + 1));
    }
    for (std::size_t j = 0; j < m; ++j) {
        if (std::find(piv.begin(), piv.end(), j) != piv.end()) continue;
        out.forms.push_back(pf.forms[j]);
        out.labels.push_back(pf.labels[j]);
    }
    return out;
}

}  // namespace frob
