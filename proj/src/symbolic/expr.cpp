#include "frob/symbolic/expr.hpp"

#include "frob/errors.hpp"

namespace frob {
namespace {

Monomial unit_monomial(std::size_t n) {
    Monomial m;
    m.exps.assign(n, 0);
    return m;
}

// Clear the leading kernel of den, optionally cancel the gcd, then fix the
// rational scale so that all coefficients are coprime integers and lc(den) > 0.
void finish(Poly& num, Poly& den, bool cancel) {
    if (den.is_zero()) throw DivisionByZero("division by zero");
    const Scope* scope = den.scope();
    if (num.is_zero()) {
        num = Poly(scope);
        den = Poly::constant(scope, 1);
        return;
    }
    if (den.has_kernels()) {
        if (const Kernel* k = den.lead().mono.kernel) {
            Monomial m = unit_monomial(scope->size());
            m.kernel = scope->inverse(k);
            num = num.times_term(m, 1);
            den = den.times_term(m, 1);
        }
        cancel = true;
    }
    if (cancel && !den.is_constant()) {
        Poly g = gcd_general(num, den);
        if (!g.is_constant()) {
            num = *num.divide_exact(g);
            den = *den.divide_exact(g);
        }
    }
    mpz_class l = 1, g = 0;
    for (const Poly* p : {&num, &den}) {
        for (const auto& t : p->terms()) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
        }
    }
    mpq_class s(l, g);
    s.canonicalize();
    if (sgn(den.lead().coef) < 0) s = -s;
    if (s != 1) {
        num = num.scaled(s);
        den = den.scaled(s);
    }
}

const ScopePtr& pick_scope(const Expr& a, const Expr& b) {
    if (a.scope() && b.scope() && a.scope() != b.scope())
        throw ScopeError("operands belong to different variable scopes");
    return a.scope() ? a.scope() : b.scope();
}

}  // namespace

void canonicalize(Poly& num, Poly& den) { finish(num, den, true); }

Expr Expr::constant(const ScopePtr& scope, const mpq_class& c) {
    return from_polys(scope, Poly::constant(scope.get(), c), Poly::constant(scope.get(), 1));
}

Expr Expr::variable(const ScopePtr& scope, std::size_t index) {
    if (index >= scope->size()) throw ScopeError("variable index out of range");
    Expr e;
    e.scope_ = scope;
    e.num_ = Poly::variable(scope.get(), index);
    e.den_ = Poly::constant(scope.get(), 1);
    return e;
}

Expr Expr::variable(const ScopePtr& scope, std::string_view name) {
    return variable(scope, scope->require(name));
}

Expr Expr::from_polys(const ScopePtr& scope, Poly num, Poly den) {
    canonicalize(num, den);
    Expr e;
    e.scope_ = scope;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
}

Expr Expr::from_poly(const ScopePtr& scope, Poly num) {
    Poly den = Poly::constant(scope.get(), 1);
    finish(num, den, false);
    Expr e;
    e.scope_ = scope;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
}

Expr Expr::exp(const Expr& arg) {
    if (!arg.scope_) throw ScopeError("exp of an unscoped value");
    if (!arg.is_exp_free()) throw NestedExpError("nested exp is not supported");
    if (arg.is_zero()) return constant(arg.scope_, 1);
    const Kernel* k = arg.scope_->intern(*arg.num_, *arg.den_);
    Monomial m = unit_monomial(arg.scope_->size());
    m.kernel = k;
    Expr e;
    e.scope_ = arg.scope_;
    e.num_ = Poly::from_terms(arg.scope_.get(), {Term{std::move(m), mpq_class(1)}});
    e.den_ = Poly::constant(arg.scope_.get(), 1);
    return e;
}

const Poly& Expr::numerator() const {
    if (!num_) throw ScopeError("unscoped expression has no numerator");
    return *num_;
}

const Poly& Expr::denominator() const {
    if (!den_) throw ScopeError("unscoped expression has no denominator");
    return *den_;
}

bool Expr::is_constant() const { return !num_ || (num_->is_constant() && den_->is_constant()); }

bool Expr::is_one() const { return num_ && num_->is_one() && den_->is_one(); }

bool Expr::is_exp_free() const { return !num_ || (!num_->has_kernels() && !den_->has_kernels()); }

bool Expr::depends_on(std::size_t var) const {
    if (!num_) return false;
    for (const Poly* p : {&*num_, &*den_}) {
        if (p->depends_on(var)) return true;
        for (const auto& t : p->terms())
            if (t.mono.kernel && (t.mono.kernel->num.depends_on(var) || t.mono.kernel->den.depends_on(var)))
                return true;
    }
    return false;
}

std::optional<mpq_class> Expr::constant_value() const {
    if (!num_) return mpq_class(0);
    if (!is_constant()) return std::nullopt;
    if (num_->is_zero()) return mpq_class(0);
    return mpq_class(num_->lead().coef / den_->lead().coef);
}

Expr Expr::operator-() const {
    Expr r = *this;
    if (r.num_) r.num_ = -*r.num_;
    return r;
}

Expr& Expr::operator+=(const Expr& o) {
    const ScopePtr& scope = pick_scope(*this, o);
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    const Poly &a = *num_, &b = *den_, &c = *o.num_, &d = *o.den_;
    Poly n(scope.get()), dd(scope.get());
    if (b == d) {
        n = a + c;
        dd = b;
        finish(n, dd, !b.is_constant());
    } else if (b.is_constant() && !d.has_kernels()) {
        n = a * d + c.scaled(b.lead().coef);
        dd = d.scaled(b.lead().coef);
        finish(n, dd, false);
    } else if (d.is_constant() && !b.has_kernels()) {
        n = a.scaled(d.lead().coef) + c * b;
        dd = b.scaled(d.lead().coef);
        finish(n, dd, false);
    } else if (!b.has_kernels() && !d.has_kernels()) {
        // Both operands are reduced, so any common factor of the new numerator
        // and denominator divides g = gcd(b, d).
        Poly g = gcd(b, d);
        if (g.is_constant()) {
            n = a * d + c * b;
            dd = b * d;
        } else {
            Poly b1 = *b.divide_exact(g);
            Poly d1 = *d.divide_exact(g);
            n = a * d1 + c * b1;
            Poly g2 = gcd_general(n, g);
            if (!g2.is_constant() && !n.is_zero()) {
                n = *n.divide_exact(g2);
                dd = b1 * *d.divide_exact(g2);
            } else {
                dd = b1 * d;
            }
        }
        finish(n, dd, false);
    } else {
        Poly g = gcd_general(b, d);
        Poly b1 = g.is_constant() ? b : *b.divide_exact(g);
        Poly d1 = g.is_constant() ? d : *d.divide_exact(g);
        n = a * d1 + c * b1;
        dd = b * d1;
        finish(n, dd, true);
    }
    num_ = std::move(n);
    den_ = std::move(dd);
    scope_ = scope;
    return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Expr& o) {
    const ScopePtr& scope = pick_scope(*this, o);
    if (is_zero()) {
        if (!scope_ && scope) *this = constant(scope, 0);
        return *this;
    }
    if (o.is_zero()) {
        *this = constant(scope, 0);
        return *this;
    }
    const Poly &a = *num_, &b = *den_, &c = *o.num_, &d = *o.den_;
    const bool kernel_dens = b.has_kernels() || d.has_kernels();
    Poly n(scope.get()), dd(scope.get());
    if (b.is_constant() && d.is_constant()) {
        n = a * c;
        dd = b * d;
    } else {
        Poly g1 = d.is_constant() ? Poly::constant(scope.get(), 1) : gcd_general(a, d);
        Poly g2 = b.is_constant() ? Poly::constant(scope.get(), 1) : gcd_general(c, b);
        auto quo = [](const Poly& p, const Poly& g) { return g.is_constant() ? p : *p.divide_exact(g); };
        n = quo(a, g1) * quo(c, g2);
        dd = quo(b, g2) * quo(d, g1);
    }
    finish(n, dd, kernel_dens);
    num_ = std::move(n);
    den_ = std::move(dd);
    return *this;
}

Expr& Expr::operator/=(const Expr& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero");
    Expr inv;
    inv.scope_ = o.scope_;
    Poly n = *o.den_, d = *o.num_;
    finish(n, d, d.has_kernels() || n.has_kernels());
    inv.num_ = std::move(n);
    inv.den_ = std::move(d);
    return *this *= inv;
}

bool Expr::same(const Expr& o) const {
    if (is_zero() && o.is_zero()) return true;
    if (!num_ || !o.num_) return false;
    return scope_ == o.scope_ && *num_ == *o.num_ && *den_ == *o.den_;
}

Expr operator+(Expr a, const Expr& b) { return a += b; }
Expr operator-(Expr a, const Expr& b) { return a -= b; }
Expr operator*(Expr a, const Expr& b) { return a *= b; }
Expr operator/(Expr a, const Expr& b) { return a /= b; }

Expr pow(const Expr& e, long n) {
    if (!e.scope()) {
        if (n <= 0) throw DivisionByZero("zero raised to a non-positive power");
        return e;
    }
    if (n < 0) return Expr::constant(e.scope(), 1) / pow(e, -n);
    if (e.is_zero()) {
        if (n == 0) throw DivisionByZero("0^0 is undefined");
        return e;
    }
    Poly num = pow(e.numerator(), static_cast<unsigned>(n));
    Poly den = pow(e.denominator(), static_cast<unsigned>(n));
    return Expr::from_polys(e.scope(), std::move(num), std::move(den));
}

bool is_zero(const Expr& e) { return e.is_zero(); }

namespace {

// Derivative of a polynomial that may carry kernels, as an Expr.
Expr poly_derivative(const ScopePtr& scope, const Poly& p, std::size_t var) {
    if (!p.has_kernels()) return Expr::from_poly(scope, p.partial_base(var));
    Expr total = Expr::constant(scope, 0);
    for (const auto& [kernel, part] : p.kernel_groups()) {
        Expr piece = Expr::from_poly(scope, part.partial_base(var));
        if (kernel) {
            Expr arg = Expr::from_polys(scope, kernel->num, kernel->den);
            piece += Expr::from_poly(scope, part) * differentiate(arg, var);
            piece *= Expr::exp(arg);
        }
        total += piece;
    }
    return total;
}

}  // namespace

Expr differentiate(const Expr& e, std::size_t var) {
    if (!e.scope()) return e;
    if (var >= e.scope()->size()) throw ScopeError("differentiation variable out of range");
    const ScopePtr& scope = e.scope();
    const Poly& n = e.numerator();
    const Poly& d = e.denominator();
    if (!n.has_kernels() && !d.has_kernels()) {
        if (d.is_constant()) return Expr::from_polys(scope, n.partial_base(var), d);
        Poly num = n.partial_base(var) * d - n * d.partial_base(var);
        return Expr::from_polys(scope, std::move(num), d * d);
    }
    Expr dn = poly_derivative(scope, n, var);
    if (d.is_constant()) return dn / Expr::from_poly(scope, d);
    Expr D = Expr::from_poly(scope, d);
    Expr N = Expr::from_poly(scope, n);
    return (dn * D - N * poly_derivative(scope, d, var)) / (D * D);
}

Expr differentiate(const Expr& e, std::string_view var) {
    if (!e.scope()) return e;
    return differentiate(e, e.scope()->require(var));
}

namespace {

struct Images {
    ScopePtr target;
    std::vector<std::optional<Expr>> image;  // per source variable
    std::vector<std::vector<Expr>> powers;

    const Expr& power(std::size_t var, std::uint32_t e) {
        auto& ps = powers[var];
        if (ps.empty()) ps.push_back(Expr::constant(target, 1));
        while (ps.size() <= e) ps.push_back(ps.back() * *image[var]);
        return ps[e];
    }
};

Expr eval_into(const Poly& p, Images& img);

Expr kernel_into(const Kernel* k, Images& img) {
    Expr arg = eval_into(k->num, img) / eval_into(k->den, img);
    if (!arg.is_exp_free()) throw NestedExpError("substitution would nest exp");
    return Expr::exp(arg);
}

Expr eval_into(const Poly& p, Images& img) {
    Expr total = Expr::constant(img.target, 0);
    for (const auto& t : p.terms()) {
        Expr term = Expr::constant(img.target, t.coef);
        for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
            if (!t.mono.exps[i]) continue;
            if (!img.image[i]) throw ScopeError("no image for variable in substitution");
            term *= img.power(i, t.mono.exps[i]);
        }
        if (t.mono.kernel) term *= kernel_into(t.mono.kernel, img);
        total += term;
    }
    return total;
}

}  // namespace

Expr substitute(const Expr& e, const std::map<std::size_t, Expr>& bindings) {
    if (!e.scope() || bindings.empty()) return e;
    const ScopePtr& scope = e.scope();
    Images img{scope, {}, {}};
    img.image.resize(scope->size());
    img.powers.resize(scope->size());
    for (std::size_t i = 0; i < scope->size(); ++i) img.image[i] = Expr::variable(scope, i);
    for (const auto& [var, value] : bindings) {
        if (var >= scope->size()) throw ScopeError("substitution variable out of range");
        if (value.scope() && value.scope() != scope) throw ScopeError("substitution image from a different scope");
        img.image[var] = value.scope() ? value : Expr::constant(scope, 0);
    }
    Expr num = eval_into(e.numerator(), img);
    Expr den = eval_into(e.denominator(), img);
    if (den.is_zero()) throw DivisionByZero("substitution makes the denominator vanish");
    return num / den;
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
    if (!e.scope()) return e;
    std::map<std::size_t, Expr> by_index;
    for (const auto& [name, value] : bindings) by_index.emplace(e.scope()->require(name), value);
    return substitute(e, by_index);
}

namespace {

Poly remap(const Poly& p, const Scope& target, const std::vector<std::size_t>& to) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Term nt;
        nt.coef = t.coef;
        nt.mono.exps.assign(target.size(), 0);
        for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
            if (!t.mono.exps[i]) continue;
            if (to[i] == target.size())
                throw ScopeError("variable '" + p.scope()->name(i) + "' is not declared in the target scope");
            nt.mono.exps[to[i]] = t.mono.exps[i];
        }
        if (t.mono.kernel) {
            Poly kn = remap(t.mono.kernel->num, target, to);
            Poly kd = remap(t.mono.kernel->den, target, to);
            canonicalize(kn, kd);
            nt.mono.kernel = target.intern(kn, kd);
        }
        terms.push_back(std::move(nt));
    }
    return Poly::from_terms(&target, std::move(terms));
}

}  // namespace

Expr rescope(const Expr& e, const ScopePtr& target) {
    if (!e.scope()) return e;
    if (e.scope() == target) return e;
    std::vector<std::size_t> to(e.scope()->size(), target->size());
    for (std::size_t i = 0; i < to.size(); ++i)
        if (auto j = target->index_of(e.scope()->name(i))) to[i] = *j;
    Poly num = remap(e.numerator(), *target, to);
    Poly den = remap(e.denominator(), *target, to);
    return Expr::from_polys(target, std::move(num), std::move(den));
}

}  // namespace frob
