#include "frob/integrability/analyze.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/parse.hpp"
#include "frob/systems/convert.hpp"

#include <algorithm>

namespace frob {

namespace {

std::size_t form_count(const System& s) { return s.pfaff().forms.size(); }

std::vector<std::string> td_labels(std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < m; ++j) out.push_back("X" + std::to_string(j + 1));
    return out;
}

}  // namespace

DimensionResult integral_basis_dimension(const System& s, std::optional<std::size_t> max_generators) {
    DimensionResult d;
    switch (s.kind()) {
        case SystemKind::Td: {
            const TdSystem& td = s.td();
            d.defect = bracket_closure(td_to_pde(td), max_generators).defect;
            d.dimension = td.n >= d.defect ? td.n - d.defect : 0;
            d.note = "n - defect = " + std::to_string(td.n) + " - " + std::to_string(d.defect);
            break;
        }
        case SystemKind::Pde: {
            const PdeSystem& p = s.pde();
            const std::size_t n = p.scope->size(), m = p.operators.size();
            if (m >= n) {
                d.note = "m = n: constants only";
                break;
            }
            d.defect = bracket_closure(p, max_generators).defect;
            d.dimension = n - m - d.defect;
            d.note = "n - m - defect = " + std::to_string(n) + " - " + std::to_string(m) + " - " +
                     std::to_string(d.defect);
            break;
        }
        case SystemKind::Pfaff: {
            const PfaffSystem& pf = s.pfaff();
            const std::size_t n = pf.scope->size(), m = pf.forms.size();
            if (m >= n) {
                d.dimension = n;
                d.note = "m = n: the coordinates form a basis";
                break;
            }
            d.defect = bracket_closure(pfaff_contragredient(pf).pde, max_generators).defect;
            d.dimension = m >= d.defect ? m - d.defect : 0;
            d.note = "m - defect = " + std::to_string(m) + " - " + std::to_string(d.defect);
            break;
        }
    }
    return d;
}

TdReduction td_defect_reduction(const TdSystem& td) {
    PdeSystem pde = td_to_pde(td);
    ClosureResult closure = bracket_closure(pde);
    if (closure.defect >= td.n) throw ConversionError("defect equals n: the system has no first integrals to keep");

    std::vector<std::string> pivots = td.indep_names();
    if (!closure.added.empty()) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < closure.added.size(); ++i) rows.push_back(closure.original_count + i);
        for (std::size_t i = 0; i < td.n; ++i) cols.push_back(td.dep_index(i));
        RankResult r = generic_rank(closure.completed.matrix().submatrix(rows, cols));
        std::vector<std::size_t> chosen;
        for (auto c : r.pivot_cols) chosen.push_back(td.dep_index(c));
        std::sort(chosen.begin(), chosen.end());
        for (auto c : chosen) pivots.push_back(td.scope->name(c));
    }
    Locus excluded = closure.excluded;
    PdeSystem normal = pde_normalize(closure.completed, pivots, &excluded);
    TdReduction out{normal_pde_to_td(normal), closure.defect, std::move(closure), std::move(normal), std::move(excluded)};
    return out;
}

AnalysisReport analyze(const System& s, const AnalyzeOptions& options) {
    AnalysisReport r;
    r.kind = s.kind();
    r.vars = s.scope()->vars();
    r.seed = options.seed;
    r.excluded = s.meta.excluded;

    switch (s.kind()) {
        case SystemKind::Td: {
            const TdSystem& td = s.td();
            r.verdict_name = "solvable";
            r.rank_ok = true;
            r.completeness = frobenius_td(td);
            r.operator_labels = td_labels(td.m);
            r.closure = bracket_closure(td_to_pde(td), options.max_generators);
            r.defect = r.closure->defect;
            r.dimension = td.n >= r.defect ? td.n - r.defect : 0;
            r.dimension_note = "n - defect = " + std::to_string(td.n) + " - " + std::to_string(r.defect);
            break;
        }
        case SystemKind::Pde: {
            const PdeSystem& p = s.pde();
            const std::size_t n = p.scope->size(), m = p.operators.size();
            r.verdict_name = "complete";
            r.rank_ok = generic_rank(p.matrix()).rank == m;
            r.completeness = pde_completeness(p);
            r.operator_labels = p.labels;
            r.closure = bracket_closure(p, options.max_generators);
            r.defect = r.closure->defect;
            if (m >= n) {
                r.dimension = 0;
                r.dimension_note = "m = n: constants only";
            } else {
                r.dimension = n - m - r.defect;
                r.dimension_note = "n - m - defect = " + std::to_string(n) + " - " + std::to_string(m) + " - " +
                                   std::to_string(r.defect);
            }
            break;
        }
        case SystemKind::Pfaff: {
            const PfaffSystem& pf = s.pfaff();
            const std::size_t n = pf.scope->size(), m = form_count(s);
            r.verdict_name = "closed";
            r.rank_ok = generic_rank(pf.matrix()).rank == m;
            r.pfaff_closure = pfaff_closure_check(pf, options.method);
            r.excluded.merge(r.pfaff_closure->excluded);
            if (m >= n) {
                r.dimension = n;
                r.dimension_note = "m = n: the coordinates form a basis";
                r.basis = r.vars;
                break;
            }
            Contragredient c = pfaff_contragredient(pf);
            for (const auto& w : c.completion) r.completion.push_back(to_string(w));
            r.excluded.merge(c.excluded);
            if (r.pfaff_closure->contragredient) {
                r.completeness = r.pfaff_closure->contragredient;
            } else {
                r.completeness = pde_completeness(c.pde);
            }
            r.operator_labels = c.pde.labels;
            r.closure = bracket_closure(c.pde, options.max_generators);
            r.defect = r.closure->defect;
            r.dimension = m >= r.defect ? m - r.defect : 0;
            r.dimension_note = "m - defect = " + std::to_string(m) + " - " + std::to_string(r.defect);
            break;
        }
    }
    if (r.completeness) {
        r.excluded.merge(r.completeness->excluded);
        r.jacobian = r.completeness->jacobian;
    }
    if (r.closure) r.excluded.merge(r.closure->excluded);
    r.verdict = r.pfaff_closure ? r.pfaff_closure->closed : r.completeness->complete;

    std::vector<Expr> valid;
    for (const auto& text : options.integrals) {
        Expr f = parse_expr(text, s.scope());
        r.integrals.push_back(verify_first_integral(s, f, options.seed));
        if (r.integrals.back().valid) valid.push_back(r.integrals.back().integral);
    }
    if (!options.integrals.empty()) r.independence = functional_independence(valid, s.scope());
    return r;
}

namespace {

Json labelled(const std::vector<std::string>& labels, const std::vector<Expr>& values) {
    Json a = Json::array();
    for (std::size_t i = 0; i < values.size(); ++i)
        a.push_back(Json{{"label", i < labels.size() ? labels[i] : std::to_string(i + 1)}, {"value", to_string(values[i])}});
    return a;
}

}  // namespace

Json pair_to_json(const PairCertificate& p, const std::vector<std::string>& labels) {
    Json j;
    j["pair"] = Json::array({labels.at(p.first), labels.at(p.second)});
    j["bracket"] = to_string(p.bracket);
    j["member"] = p.cert.member();
    if (p.cert.member()) {
        j["coefficients"] = labelled(labels, p.cert.coefficients);
    } else {
        j["minor"] = to_string(p.cert.minor);
    }
    return j;
}

Json certificate_to_json(const IntegralCertificate& c) {
    Json j;
    j["expr"] = to_string(c.integral);
    j["verdict"] = c.valid ? "valid" : "invalid";
    if (c.cert) {
        if (c.cert->member()) {
            j["multipliers"] = labelled(c.labels, c.cert->coefficients);
        } else {
            j["minor"] = to_string(c.cert->minor);
        }
    } else {
        j["residuals"] = labelled(c.labels, c.residuals);
    }
    if (!c.valid) j["witness"] = c.witness_text.empty() ? Json(nullptr) : Json(c.witness_text);
    return j;
}

Json report_to_json(const AnalysisReport& r) {
    Json j;
    j["kind"] = kind_name(r.kind);
    j["vars"] = r.vars;
    j["rank_ok"] = r.rank_ok;
    j["verdict"] = Json{{r.verdict_name, r.verdict}};
    j["jacobian"] = r.jacobian;
    j["defect"] = r.defect;
    j["dimension"] = r.dimension;
    j["dimension_note"] = r.dimension_note;
    if (r.completeness) {
        Json pairs = Json::array();
        for (const auto& p : r.completeness->pairs) pairs.push_back(pair_to_json(p, r.operator_labels));
        j["brackets"] = pairs;
        if (r.completeness->witness)
            j["witness"] = pair_to_json(r.completeness->pairs[*r.completeness->witness], r.operator_labels);
    }
    if (r.pfaff_closure) {
        Json pc;
        pc["method"] = method_name(r.pfaff_closure->method);
        if (r.pfaff_closure->wedge_closed) pc["wedge"] = *r.pfaff_closure->wedge_closed;
        if (r.pfaff_closure->contragredient) pc["contragredient"] = r.pfaff_closure->contragredient->complete;
        if (r.pfaff_closure->wedge_witness) {
            pc["wedge_witness"] = Json{{"form", *r.pfaff_closure->wedge_witness + 1},
                                       {"value", to_string(*r.pfaff_closure->wedge_form)}};
        }
        j["closure_check"] = pc;
    }
    if (!r.completion.empty()) j["completion"] = r.completion;
    if (!r.basis.empty()) j["basis"] = r.basis;
    Json added = Json::array();
    if (r.closure)
        for (const auto& g : r.closure->added)
            added.push_back(Json{{"label", g.label}, {"operator", to_string(g.op)}, {"trace", g.trace}});
    j["added_generators"] = added;
    j["excluded_locus"] = locus_to_json(r.excluded);
    Json ints = Json::array();
    for (const auto& c : r.integrals) ints.push_back(certificate_to_json(c));
    j["integrals"] = ints;
    if (r.independence)
        j["independence"] = Json{{"rank", r.independence->rank}, {"independent", r.independence->independent}};
    j["seed"] = r.seed;
    return j;
}

}  // namespace frob
