#include "frob/symbolic/evaluate.hpp"

#include "frob/errors.hpp"

#include <memory>

namespace frob {

BigFloat::BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(value_, o.precision());
    mpfr_set(value_, o.value_, MPFR_RNDN);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(value_, o.precision());
        mpfr_set(value_, o.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(std::size_t digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_zero_p(value_)) return "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, value_, MPFR_RNDN);
    std::unique_ptr<char, void (*)(char*)> guard(raw, mpfr_free_str);
    std::string mant(raw);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant.erase(0, 1);
    }
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp10) - 1);
    return out;
}

PointVec to_point_vec(const Scope& scope, const Point& point) {
    PointVec v(scope.size());
    for (const auto& [name, value] : point) {
        auto i = scope.index_of(name);
        if (!i) throw EvaluationError("point binds undeclared variable '" + name + "'");
        v[*i] = value;
    }
    return v;
}

namespace {

mpq_class eval_poly_exact(const Poly& p, const PointVec& pt) {
    mpq_class total = 0;
    for (const auto& t : p.terms()) {
        if (t.mono.kernel) throw EvaluationError("exact evaluation of an exp-bearing expression");
        mpq_class v = t.coef;
        for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
            if (!t.mono.exps[i]) continue;
            if (!pt[i]) throw EvaluationError("variable '" + p.scope()->name(i) + "' is unbound");
            mpq_class f;
            mpz_pow_ui(f.get_num_mpz_t(), pt[i]->get_num_mpz_t(), t.mono.exps[i]);
            mpz_pow_ui(f.get_den_mpz_t(), pt[i]->get_den_mpz_t(), t.mono.exps[i]);
            v *= f;
        }
        total += v;
    }
    return total;
}

mpq_class kernel_arg(const Kernel* k, const PointVec& pt) {
    const mpq_class den = eval_poly_exact(k->den, pt);
    if (sgn(den) == 0) throw DivisionByZero("exp argument denominator vanishes at the point");
    return eval_poly_exact(k->num, pt) / den;
}

// Sum of c * exp(q) grouped by the exact rational q.
using ExpSum = std::map<mpq_class, mpq_class>;

ExpSum eval_poly_expsum(const Poly& p, const PointVec& pt) {
    ExpSum s;
    for (const auto& t : p.terms()) {
        Term bare = t;
        bare.mono.kernel = nullptr;
        const mpq_class c = eval_poly_exact(Poly::from_terms(p.scope(), {bare}), pt);
        const mpq_class q = t.mono.kernel ? kernel_arg(t.mono.kernel, pt) : mpq_class(0);
        s[q] += c;
    }
    // Exp of distinct rationals is linearly independent over Q.
    std::erase_if(s, [](const auto& kv) { return sgn(kv.second) == 0; });
    return s;
}

void expsum_float(const ExpSum& s, mpfr_ptr out, mpfr_prec_t w) {
    BigFloat acc(w), term(w), arg(w);
    for (const auto& [q, c] : s) {
        mpfr_set_q(arg.get(), q.get_mpq_t(), MPFR_RNDN);
        mpfr_exp(term.get(), arg.get(), MPFR_RNDN);
        mpfr_mul_q(term.get(), term.get(), c.get_mpq_t(), MPFR_RNDN);
        mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    }
    mpfr_set(out, acc.get(), MPFR_RNDN);
}

}  // namespace

mpq_class evaluate_exact(const Expr& e, const PointVec& point) {
    if (!e.scope()) return 0;
    if (!e.is_exp_free()) throw EvaluationError("exact evaluation requires an exp-free expression");
    const mpq_class den = eval_poly_exact(e.denominator(), point);
    if (sgn(den) == 0) throw DivisionByZero("denominator vanishes at the point");
    return eval_poly_exact(e.numerator(), point) / den;
}

mpq_class evaluate_exact(const Expr& e, const Point& point) {
    if (!e.scope()) return 0;
    return evaluate_exact(e, to_point_vec(*e.scope(), point));
}

BigFloat evaluate_float(const Expr& e, const PointVec& point, unsigned precision_bits) {
    if (precision_bits < 64) throw EvaluationError("float evaluation needs at least 64 bits of precision");
    BigFloat result(precision_bits);
    if (!e.scope()) return result;
    const ExpSum den = eval_poly_expsum(e.denominator(), point);
    if (den.empty()) throw DivisionByZero("denominator vanishes at the point");
    const ExpSum num = eval_poly_expsum(e.numerator(), point);
    if (num.empty()) return result;

    const bool rational = num.size() == 1 && den.size() == 1 && sgn(num.begin()->first) == 0 &&
                          sgn(den.begin()->first) == 0;
    if (rational) {
        const mpq_class q = num.begin()->second / den.begin()->second;
        mpfr_set_q(result.get(), q.get_mpq_t(), MPFR_RNDN);
        return result;
    }

    // Ziv-style: widen the working precision until two evaluations round alike.
    mpfr_prec_t w = precision_bits + 64;
    BigFloat prev(precision_bits);
    bool have_prev = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
        BigFloat n(w), d(w), q(w);
        expsum_float(num, n.get(), w);
        expsum_float(den, d.get(), w);
        mpfr_div(q.get(), n.get(), d.get(), MPFR_RNDN);
        BigFloat rounded(precision_bits);
        mpfr_set(rounded.get(), q.get(), MPFR_RNDN);
        if (have_prev && mpfr_equal_p(prev.get(), rounded.get())) return rounded;
        prev = rounded;
        have_prev = true;
        w *= 2;
    }
    return prev;
}

BigFloat evaluate_float(const Expr& e, const Point& point, unsigned precision_bits) {
    if (!e.scope()) return BigFloat(precision_bits);
    return evaluate_float(e, to_point_vec(*e.scope(), point), precision_bits);
}

bool vanishes_at(const Expr& e, const PointVec& point) {
    if (!e.scope()) return true;
    if (eval_poly_expsum(e.denominator(), point).empty())
        throw DivisionByZero("denominator vanishes at the point");
    return eval_poly_expsum(e.numerator(), point).empty();
}

}  // namespace frob
