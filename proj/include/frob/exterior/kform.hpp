#pragma once

#include "frob/symbolic/expr.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace frob {

using IndexTuple = std::vector<std::size_t>;

// Differential k-form: strictly increasing index tuples -> nonzero coefficients.
class KForm {
public:
    KForm(ScopePtr scope, unsigned degree) : scope_(std::move(scope)), degree_(degree) {}

    static KForm coordinate(const ScopePtr& scope, std::size_t var);  // d(var)
    // One-form sum_i coeffs[i] d(x_i).
    static KForm one_form(const ScopePtr& scope, const std::vector<Expr>& coeffs);

    const ScopePtr& scope() const { return scope_; }
    unsigned degree() const { return degree_; }
    const std::map<IndexTuple, Expr>& terms() const { return terms_; }
    Expr coefficient(const IndexTuple& idx) const;
    // Coefficient vector of a one-form.
    std::vector<Expr> coefficients() const;
    void set(IndexTuple idx, Expr value);

    bool is_zero() const { return terms_.empty(); }

    KForm operator-() const;
    KForm& operator+=(const KForm& o);
    KForm& operator-=(const KForm& o);
    KForm scaled(const Expr& f) const;

private:
    ScopePtr scope_;
    unsigned degree_;
    std::map<IndexTuple, Expr> terms_;
};

KForm operator+(KForm a, const KForm& b);
KForm operator-(KForm a, const KForm& b);

KForm exterior_derivative(const KForm& w);
KForm wedge(const KForm& a, const KForm& b);
KForm differential(const Expr& f);  // 1-form dF

bool equivalent(const KForm& a, const KForm& b);

// "x1*d(x1) + (..)*d(x2,x3)"; re-parseable by parse_form.
std::string to_string(const KForm& w);
KForm parse_form(std::string_view text, const ScopePtr& scope, unsigned degree = 1, std::size_t line = 1,
                 std::size_t column = 1);

KForm rescope(const KForm& w, const ScopePtr& target);

}  // namespace frob
