#include "frob/exterior/vector_field.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/parse.hpp"

namespace frob {

VectorField VectorField::coordinate(const ScopePtr& scope, std::size_t var) {
    VectorField v(scope);
    v.set(var, Expr::constant(scope, 1));
    return v;
}

Expr VectorField::component(std::size_t var) const {
    auto it = comps_.find(var);
    return it == comps_.end() ? Expr::constant(scope_, 0) : it->second;
}

void VectorField::set(std::size_t var, Expr value) {
    if (var >= scope_->size()) throw ScopeError("vector field component out of range");
    if (value.scope() && value.scope() != scope_) throw ScopeError("component from a different scope");
    if (value.is_zero()) comps_.erase(var);
    else comps_[var] = std::move(value);
}

VectorField VectorField::operator-() const {
    VectorField r = *this;
    for (auto& [k, c] : r.comps_) c = -c;
    return r;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    if (o.scope_ != scope_) throw ScopeError("vector fields from different scopes");
    for (const auto& [k, c] : o.comps_) set(k, component(k) + c);
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    if (o.scope_ != scope_) throw ScopeError("vector fields from different scopes");
    for (const auto& [k, c] : o.comps_) set(k, component(k) - c);
    return *this;
}

VectorField VectorField::scaled(const Expr& f) const {
    VectorField r(scope_);
    for (const auto& [k, c] : comps_) r.set(k, c * f);
    return r;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }

Expr apply(const VectorField& field, const Expr& e) {
    Expr total = Expr::constant(field.scope(), 0);
    for (const auto& [var, c] : field.components()) {
        if (!e.depends_on(var)) continue;
        total += c * differentiate(e, var);
    }
    return total;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
    if (a.scope() != b.scope()) throw ScopeError("bracket of fields from different scopes");
    VectorField r(a.scope());
    for (std::size_t i = 0; i < a.scope()->size(); ++i) {
        const bool in_a = a.components().count(i) != 0, in_b = b.components().count(i) != 0;
        if (!in_a && !in_b) continue;
        Expr c = Expr::constant(a.scope(), 0);
        if (in_b) c += apply(a, b.component(i));
        if (in_a) c -= apply(b, a.component(i));
        r.set(i, std::move(c));
    }
    return r;
}

bool equivalent(const VectorField& a, const VectorField& b) {
    if (a.scope() != b.scope()) return false;
    return (a - b).is_zero();
}

std::string print_linear(const std::vector<std::pair<std::string, Expr>>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [basis, c] : terms) {
        std::string body;
        bool neg = false;
        if (c.denominator().is_one() && c.numerator().size() == 1) {
            neg = sgn(c.numerator().lead().coef) < 0;
            Expr a = neg ? -c : c;
            body = a.is_one() ? basis : to_string(a) + "*" + basis;
        } else {
            body = "(" + to_string(c) + ")*" + basis;
        }
        if (first) {
            // to_string guards the leading "-v^k" case.
            if (neg) s += c.constant_value() ? "-" + body : to_string(c) + "*" + basis;
            else s += body;
        } else {
            s += (neg ? " - " : " + ") + body;
        }
        first = false;
    }
    return s;
}

std::string to_string(const VectorField& v) {
    std::vector<std::pair<std::string, Expr>> terms;
    for (const auto& [k, c] : v.components()) terms.emplace_back("@" + v.scope()->name(k), c);
    return print_linear(terms);
}

VectorField parse_field(std::string_view text, const ScopePtr& scope, std::size_t line, std::size_t column) {
    VectorField v(scope);
    for (auto& [key, c] : parse_linear(text, scope, BasisKind::Vector, line, column)) v.set(key.front(), c);
    return v;
}

VectorField rescope(const VectorField& v, const ScopePtr& target) {
    VectorField r(target);
    for (const auto& [k, c] : v.components()) r.set(target->require(v.scope()->name(k)), rescope(c, target));
    return r;
}

}  // namespace frob
