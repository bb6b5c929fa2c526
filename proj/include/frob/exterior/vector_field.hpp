#pragma once

#include "frob/symbolic/expr.hpp"

#include <map>
#include <string>
#include <string_view>

namespace frob {

// First-order operator sum_i c_i * d/dx_i; absent components are zero.
class VectorField {
public:
    explicit VectorField(ScopePtr scope) : scope_(std::move(scope)) {}

    static VectorField coordinate(const ScopePtr& scope, std::size_t var);

    const ScopePtr& scope() const { return scope_; }
    const std::map<std::size_t, Expr>& components() const { return comps_; }
    Expr component(std::size_t var) const;
    void set(std::size_t var, Expr value);

    bool is_zero() const { return comps_.empty(); }

    VectorField operator-() const;
    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField scaled(const Expr& f) const;

private:
    ScopePtr scope_;
    std::map<std::size_t, Expr> comps_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);

Expr apply(const VectorField& field, const Expr& e);
VectorField lie_bracket(const VectorField& a, const VectorField& b);

// Componentwise is_zero of the difference.
bool equivalent(const VectorField& a, const VectorField& b);

// "(c1)*@x1 + x5*@x4 - @x2"; re-parseable by parse_field.
std::string to_string(const VectorField& v);
VectorField parse_field(std::string_view text, const ScopePtr& scope, std::size_t line = 1, std::size_t column = 1);

VectorField rescope(const VectorField& v, const ScopePtr& target);

// Shared printer for coefficient * basis sums.
std::string print_linear(const std::vector<std::pair<std::string, Expr>>& terms);

}  // namespace frob
