#pragma once

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frob {

class Scope;
struct Kernel;

using Exponents = boost::container::small_vector<std::uint32_t, 8>;

// A power product over the scope variables, times at most one exp kernel.
// Kernels merge on multiplication, so a kernel never carries an exponent.
struct Monomial {
    Exponents exps;
    const Kernel* kernel = nullptr;

    std::uint32_t base_degree() const;
    std::uint32_t degree() const { return base_degree() + (kernel ? 1u : 0u); }
    bool is_one() const;
};

// Graded lex over declaration order; the kernel counts as one extra degree and
// is compared after every base variable. Returns <0, 0, >0.
int compare(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    mpq_class coef;
};

// Sparse distributed polynomial over Q in the scope variables and exp kernels.
// Terms are kept sorted in decreasing monomial order with nonzero coefficients.
class Poly {
public:
    explicit Poly(const Scope* scope) : scope_(scope) {}

    static Poly constant(const Scope* scope, const mpq_class& c);
    static Poly variable(const Scope* scope, std::size_t index);
    static Poly from_terms(const Scope* scope, std::vector<Term> terms);

    const Scope* scope() const { return scope_; }
    std::size_t nvars() const;
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    bool has_kernels() const;
    const Term& lead() const { return terms_.front(); }

    std::uint32_t degree_in(std::size_t var) const;
    std::uint32_t total_degree() const;
    bool depends_on(std::size_t var) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly scaled(const mpq_class& c) const;
    Poly times_term(const Monomial& m, const mpq_class& c) const;

    // Coefficients with respect to one base variable, index = power.
    std::vector<Poly> coefficients_in(std::size_t var) const;
    static Poly from_coefficients(const Scope* scope, std::size_t var, const std::vector<Poly>& coeffs);

    // Coefficient polynomial of every kernel (nullptr = kernel-free part).
    std::vector<std::pair<const Kernel*, Poly>> kernel_groups() const;

    // Base-variable derivative; kernels are treated as constants here.
    Poly partial_base(std::size_t var) const;

    // Exact quotient by a kernel-free divisor, or nullopt if it does not divide.
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    // Factor c such that c*p has coprime integer coefficients and positive leading coefficient.
    mpq_class primitive_scale() const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

private:
    void normalize();

    const Scope* scope_;
    std::vector<Term> terms_;

    friend Poly operator*(const Poly& a, const Poly& b);
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly pow(const Poly& p, unsigned n);

// Greatest common divisor over Q for kernel-free operands, normalised to
// coprime integer coefficients with positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

// gcd that accepts kernel-bearing operands (see canonical form notes in expr.hpp).
Poly gcd_general(const Poly& a, const Poly& b);

std::string to_string(const Poly& p);

// exp(num/den) with num/den a canonical exp-free rational function.
struct Kernel {
    Poly num;
    Poly den;
    std::string key;
};

}  // namespace frob
