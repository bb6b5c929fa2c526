#pragma once

#include "frob/symbolic/expr.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frob {

// Owning MPFR value.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision);
    BigFloat(const BigFloat& o);
    BigFloat& operator=(const BigFloat& o);
    ~BigFloat();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    // Decimal scientific notation with `digits` significant digits.
    std::string to_string(std::size_t digits) const;

private:
    mpfr_t value_;
};

using Point = std::map<std::string, mpq_class>;
// Values indexed by scope variable; unset entries are unbound.
using PointVec = std::vector<std::optional<mpq_class>>;

PointVec to_point_vec(const Scope& scope, const Point& point);

// Exact value; requires an exp-free expression. Throws EvaluationError for
// unbound variables or exp, DivisionByZero if the denominator vanishes.
mpq_class evaluate_exact(const Expr& e, const Point& point);
mpq_class evaluate_exact(const Expr& e, const PointVec& point);

// Value rounded to nearest at `precision_bits` (>= 64).
BigFloat evaluate_float(const Expr& e, const Point& point, unsigned precision_bits);
BigFloat evaluate_float(const Expr& e, const PointVec& point, unsigned precision_bits);

// True if e vanishes exactly at the point (exp values handled exactly).
bool vanishes_at(const Expr& e, const PointVec& point);

}  // namespace frob
