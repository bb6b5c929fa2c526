#pragma once

#include "frob/symbolic/poly.hpp"
#include "frob/symbolic/scope.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace frob {

// Canonical rational function num/den over Q in the scope variables and exp kernels.
//
// Canonical form: gcd(num, den) removed, all coefficients coprime integers,
// denominator leading coefficient positive, leading kernel of the denominator
// cleared by a unit exp factor. Zero iff num is zero. When the denominator still
// carries more than one kernel after that, only the coefficient content is
// cancelled; equality of such values must go through is_zero(a - b).
class Expr {
public:
    Expr() = default;  // unscoped zero; adopts the scope of the other operand

    static Expr constant(const ScopePtr& scope, const mpq_class& c);
    static Expr variable(const ScopePtr& scope, std::size_t index);
    static Expr variable(const ScopePtr& scope, std::string_view name);
    static Expr from_polys(const ScopePtr& scope, Poly num, Poly den);
    static Expr from_poly(const ScopePtr& scope, Poly num);
    // exp(arg); throws NestedExpError if arg contains exp.
    static Expr exp(const Expr& arg);

    const ScopePtr& scope() const { return scope_; }
    const Poly& numerator() const;
    const Poly& denominator() const;

    bool is_zero() const { return !num_ || num_->is_zero(); }
    bool is_constant() const;
    bool is_one() const;
    bool is_exp_free() const;
    bool depends_on(std::size_t var) const;
    std::optional<mpq_class> constant_value() const;

    Expr operator-() const;
    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    Expr& operator*=(const Expr& o);
    Expr& operator/=(const Expr& o);

    // Structural equality of canonical forms.
    bool same(const Expr& o) const;

private:
    ScopePtr scope_;
    std::optional<Poly> num_;
    std::optional<Poly> den_;
};

Expr operator+(Expr a, const Expr& b);
Expr operator-(Expr a, const Expr& b);
Expr operator*(Expr a, const Expr& b);
Expr operator/(Expr a, const Expr& b);
Expr pow(const Expr& e, long n);

bool is_zero(const Expr& e);
Expr differentiate(const Expr& e, std::size_t var);
Expr differentiate(const Expr& e, std::string_view var);

// Simultaneous substitution var -> image; all images live in e's scope.
Expr substitute(const Expr& e, const std::map<std::size_t, Expr>& bindings);
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

// Re-express e in another scope. Every variable e uses must exist there by name.
Expr rescope(const Expr& e, const ScopePtr& target);

std::string to_string(const Expr& e);
// Length of the printed form; used as the elimination pivot size measure.
std::size_t print_size(const Expr& e);

// Printed num/den pair as used for kernel keys and Expr printing.
std::string print_rational(const Poly& num, const Poly& den);

// Internal canonicalisation of a num/den pair (throws DivisionByZero on den == 0).
void canonicalize(Poly& num, Poly& den);

}  // namespace frob
