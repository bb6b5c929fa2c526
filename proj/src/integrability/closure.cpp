#include "frob/integrability/closure.hpp"

#include "frob/errors.hpp"
#include "frob/systems/convert.hpp"

#include <map>
#include <set>

namespace frob {

int normalize_sign(VectorField& v) {
    for (const auto& [var, c] : v.components()) {
        if (sgn(c.numerator().lead().coef) < 0) {
            v = -v;
            return -1;
        }
        return 1;
    }
    return 1;
}

namespace {

PairCertificate certify(const std::vector<VectorField>& ops, std::size_t j, std::size_t k, const ScopePtr& scope) {
    PairCertificate p;
    p.first = j;
    p.second = k;
    p.bracket = lie_bracket(ops[j], ops[k]);
    p.cert = in_span(field_row(p.bracket), field_rows(ops), scope);
    return p;
}

}  // namespace

CompletenessResult frobenius_td(const TdSystem& td) {
    auto ops = td_operators(td);
    CompletenessResult r;
    for (std::size_t j = 0; j < ops.size(); ++j)
        for (std::size_t k = j + 1; k < ops.size(); ++k) {
            PairCertificate p = certify(ops, j, k, td.scope);
            const bool vanishes = p.bracket.is_zero();
            r.jacobian = r.jacobian && vanishes;
            if (!vanishes && !r.witness) r.witness = r.pairs.size();
            r.excluded.merge(p.cert.excluded);
            r.pairs.push_back(std::move(p));
        }
    r.complete = r.jacobian;
    return r;
}

CompletenessResult pde_completeness(const PdeSystem& pde) {
    CompletenessResult r;
    const auto& ops = pde.operators;
    for (std::size_t j = 0; j < ops.size(); ++j)
        for (std::size_t k = j + 1; k < ops.size(); ++k) {
            PairCertificate p = certify(ops, j, k, pde.scope);
            r.jacobian = r.jacobian && p.bracket.is_zero();
            if (!p.cert.member()) {
                r.complete = false;
                if (!r.witness) r.witness = r.pairs.size();
            }
            r.excluded.merge(p.cert.excluded);
            r.pairs.push_back(std::move(p));
        }
    return r;
}

ClosureResult bracket_closure(const PdeSystem& pde, std::optional<std::size_t> max_generators) {
    const std::size_t n = pde.scope->size();
    const std::size_t cap = max_generators.value_or(n);
    ClosureResult r;
    r.original_count = pde.operators.size();
    std::vector<VectorField> gens = pde.operators;
    std::vector<std::string> labels = pde.labels;
    std::set<std::pair<std::size_t, std::size_t>> settled;
    std::map<std::pair<std::size_t, std::size_t>, VectorField> cache;

    bool added = true;
    while (added && gens.size() < n) {
        added = false;
        const auto rows = field_rows(gens);
        for (std::size_t j = 0; j < gens.size() && !added && r.complete; ++j)
            for (std::size_t k = j + 1; k < gens.size() && !added && r.complete; ++k) {
                if (settled.count({j, k})) continue;
                auto it = cache.find({j, k});
                if (it == cache.end()) it = cache.emplace(std::make_pair(j, k), lie_bracket(gens[j], gens[k])).first;
                SpanCertificate cert = in_span(field_row(it->second), rows, pde.scope);
                if (cert.member()) {
                    settled.insert({j, k});
                    r.excluded.merge(cert.excluded);
                    continue;
                }
                if (gens.size() >= cap) {
                    r.complete = false;
                    break;
                }
                r.excluded.merge(cert.excluded);
                AddedGenerator g;
                g.op = it->second;
                const int sign = normalize_sign(g.op);
                g.first = j;
                g.second = k;
                g.label = "B" + std::to_string(r.added.size() + 1);
                g.trace = std::string(sign < 0 ? "-" : "") + "[" + labels[j] + "," + labels[k] + "]";
                gens.push_back(g.op);
                labels.push_back(g.label);
                r.added.push_back(std::move(g));
                added = true;
            }
    }
    r.defect = r.added.size();
    r.completed = PdeSystem{pde.scope, gens, labels, std::nullopt};
    if (r.added.empty()) r.completed.pivots = pde.pivots;
    return r;
}

std::string method_name(ClosureMethod m) {
    switch (m) {
        case ClosureMethod::Wedge: return "wedge";
        case ClosureMethod::Contragredient: return "contragredient";
        case ClosureMethod::Both: return "both";
    }
    return "?";
}

ClosureMethod parse_method(const std::string& s) {
    if (s == "wedge") return ClosureMethod::Wedge;
    if (s == "contragredient") return ClosureMethod::Contragredient;
    if (s == "both") return ClosureMethod::Both;
    throw Error("unknown closure method '" + s + "' (expected wedge, contragredient or both)");
}

PfaffClosure pfaff_closure_check(const PfaffSystem& pf, ClosureMethod method) {
    PfaffClosure r;
    r.method = method;
    const std::size_t m = pf.forms.size();
    if (method != ClosureMethod::Contragredient) {
        KForm product = pf.forms.front();
        for (std::size_t j = 1; j < m; ++j) product = wedge(product, pf.forms[j]);
        r.wedge_closed = true;
        for (std::size_t j = 0; j < m; ++j) {
            KForm w = wedge(exterior_derivative(pf.forms[j]), product);
            if (!w.is_zero()) {
                r.wedge_closed = false;
                r.wedge_witness = j;
                r.wedge_form = std::move(w);
                break;
            }
        }
    }
    if (method != ClosureMethod::Wedge) {
        if (m < pf.scope->size()) {
            Contragredient c = pfaff_contragredient(pf);
            r.excluded.merge(c.excluded);
            r.contragredient = pde_completeness(c.pde);
            r.excluded.merge(r.contragredient->excluded);
        } else {
            r.contragredient = CompletenessResult{};
        }
    }
    if (r.wedge_closed && r.contragredient && *r.wedge_closed != r.contragredient->complete)
        throw MethodDisagreement("wedge criterion says " + std::string(*r.wedge_closed ? "closed" : "not closed") +
                                 " but the contragredient system is " +
                                 (r.contragredient->complete ? "complete" : "incomplete"));
    r.closed = r.wedge_closed ? *r.wedge_closed : r.contragredient->complete;
    return r;
}

}  // namespace frob
