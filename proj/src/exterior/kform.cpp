#include "frob/exterior/kform.hpp"

#include "frob/errors.hpp"
#include "frob/exterior/vector_field.hpp"
#include "frob/symbolic/parse.hpp"

#include <algorithm>

namespace frob {
namespace {

// Sorts idx in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(IndexTuple& idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return 0;
    return sign;
}

}  // namespace

KForm KForm::coordinate(const ScopePtr& scope, std::size_t var) {
    KForm w(scope, 1);
    w.set({var}, Expr::constant(scope, 1));
    return w;
}

KForm KForm::one_form(const ScopePtr& scope, const std::vector<Expr>& coeffs) {
    if (coeffs.size() != scope->size()) throw ScopeError("one-form needs one coefficient per variable");
    KForm w(scope, 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) w.set({i}, coeffs[i]);
    return w;
}

Expr KForm::coefficient(const IndexTuple& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Expr::constant(scope_, 0) : it->second;
}

std::vector<Expr> KForm::coefficients() const {
    if (degree_ != 1) throw Error("coefficients() needs a one-form");
    std::vector<Expr> out;
    for (std::size_t i = 0; i < scope_->size(); ++i) out.push_back(coefficient({i}));
    return out;
}

void KForm::set(IndexTuple idx, Expr value) {
    if (idx.size() != degree_) throw Error("index tuple length differs from form degree");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= scope_->size()) throw ScopeError("form index out of range");
        if (i && idx[i - 1] >= idx[i]) throw Error("form index tuple must be strictly increasing");
    }
    if (value.scope() && value.scope() != scope_) throw ScopeError("coefficient from a different scope");
    if (value.is_zero()) terms_.erase(idx);
    else terms_[std::move(idx)] = std::move(value);
}

KForm KForm::operator-() const {
    KForm r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

KForm& KForm::operator+=(const KForm& o) {
    if (o.scope_ != scope_ || o.degree_ != degree_) throw ScopeError("adding incompatible forms");
    for (const auto& [k, c] : o.terms_) set(k, coefficient(k) + c);
    return *this;
}

KForm& KForm::operator-=(const KForm& o) {
    if (o.scope_ != scope_ || o.degree_ != degree_) throw ScopeError("subtracting incompatible forms");
    for (const auto& [k, c] : o.terms_) set(k, coefficient(k) - c);
    return *this;
}

KForm KForm::scaled(const Expr& f) const {
    KForm r(scope_, degree_);
    for (const auto& [k, c] : terms_) r.set(k, c * f);
    return r;
}

KForm operator+(KForm a, const KForm& b) { return a += b; }
KForm operator-(KForm a, const KForm& b) { return a -= b; }

KForm exterior_derivative(const KForm& w) {
    const ScopePtr& scope = w.scope();
    KForm r(scope, w.degree() + 1);
    if (w.degree() + 1 > scope->size()) return r;
    std::map<IndexTuple, Expr> acc;
    for (const auto& [idx, c] : w.terms()) {
        for (std::size_t j = 0; j < scope->size(); ++j) {
            if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
            if (!c.depends_on(j)) continue;
            // dx_j ^ dx_I: move dx_j past every index smaller than j.
            IndexTuple out;
            std::size_t smaller = 0;
            for (auto i : idx)
                if (i < j) ++smaller;
            out = idx;
            out.insert(out.begin() + static_cast<long>(smaller), j);
            Expr term = differentiate(c, j);
            if (smaller % 2) term = -term;
            auto it = acc.find(out);
            if (it == acc.end()) acc.emplace(std::move(out), std::move(term));
            else it->second += term;
        }
    }
    for (auto& [k, c] : acc) r.set(k, c);
    return r;
}

KForm wedge(const KForm& a, const KForm& b) {
    if (a.scope() != b.scope()) throw ScopeError("wedge of forms from different scopes");
    KForm r(a.scope(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.scope()->size()) return r;
    std::map<IndexTuple, Expr> acc;
    for (const auto& [i, f] : a.terms()) {
        for (const auto& [j, g] : b.terms()) {
            IndexTuple idx = i;
            idx.insert(idx.end(), j.begin(), j.end());
            const int sign = sort_with_sign(idx);
            if (!sign) continue;
            Expr term = f * g;
            if (sign < 0) term = -term;
            auto it = acc.find(idx);
            if (it == acc.end()) acc.emplace(std::move(idx), std::move(term));
            else it->second += term;
        }
    }
    for (auto& [k, c] : acc) r.set(k, c);
    return r;
}

KForm differential(const Expr& f) {
    if (!f.scope()) throw ScopeError("differential of an unscoped value");
    KForm r(f.scope(), 1);
    for (std::size_t j = 0; j < f.scope()->size(); ++j)
        if (f.depends_on(j)) r.set({j}, differentiate(f, j));
    return r;
}

bool equivalent(const KForm& a, const KForm& b) {
    if (a.scope() != b.scope() || a.degree() != b.degree()) return false;
    return (a - b).is_zero();
}

std::string to_string(const KForm& w) {
    if (w.degree() == 0) return to_string(w.coefficient({}));
    std::vector<std::pair<std::string, Expr>> terms;
    for (const auto& [idx, c] : w.terms()) {
        std::string basis = "d(";
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) basis += ",";
            basis += w.scope()->name(idx[i]);
        }
        terms.emplace_back(basis + ")", c);
    }
    return print_linear(terms);
}

KForm parse_form(std::string_view text, const ScopePtr& scope, unsigned degree, std::size_t line,
                 std::size_t column) {
    KForm w(scope, degree);
    for (auto& [idx, c] : parse_linear(text, scope, BasisKind::Form, line, column)) {
        if (idx.size() != degree)
            throw ParseError(line, column, "form term of degree " + std::to_string(idx.size()) + ", expected " +
                                               std::to_string(degree));
        w.set(idx, w.coefficient(idx) + c);
    }
    return w;
}

KForm rescope(const KForm& w, const ScopePtr& target) {
    KForm r(target, w.degree());
    for (const auto& [idx, c] : w.terms()) {
        IndexTuple out;
        for (auto i : idx) out.push_back(target->require(w.scope()->name(i)));
        const int sign = sort_with_sign(out);
        Expr v = rescope(c, target);
        r.set(out, r.coefficient(out) + (sign < 0 ? -v : v));
    }
    return r;
}

}  // namespace frob
