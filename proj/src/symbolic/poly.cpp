#include "frob/symbolic/poly.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/scope.hpp"

#include <algorithm>

namespace frob {

std::uint32_t Monomial::base_degree() const {
    std::uint32_t d = 0;
    for (auto e : exps) d += e;
    return d;
}

bool Monomial::is_one() const {
    if (kernel) return false;
    for (auto e : exps)
        if (e) return false;
    return true;
}

int compare(const Monomial& a, const Monomial& b) {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
    if (a.kernel == b.kernel) return 0;
    if (!a.kernel) return -1;
    if (!b.kernel) return 1;
    const int c = a.kernel->key.compare(b.kernel->key);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

namespace {

Monomial unit_monomial(std::size_t n) {
    Monomial m;
    m.exps.assign(n, 0);
    return m;
}

}  // namespace

std::size_t Poly::nvars() const { return scope_ ? scope_->size() : 0; }

Poly Poly::constant(const Scope* scope, const mpq_class& c) {
    Poly p(scope);
    if (sgn(c) != 0) p.terms_.push_back({unit_monomial(scope->size()), c});
    return p;
}

Poly Poly::variable(const Scope* scope, std::size_t index) {
    Poly p(scope);
    Monomial m = unit_monomial(scope->size());
    m.exps.at(index) = 1;
    p.terms_.push_back({std::move(m), mpq_class(1)});
    return p;
}

Poly Poly::from_terms(const Scope* scope, std::vector<Term> terms) {
    Poly p(scope);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && compare(out.back().mono, t.mono) == 0) {
            out.back().coef += t.coef;
            if (sgn(out.back().coef) == 0) out.pop_back();
        } else if (sgn(t.coef) != 0) {
            out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Poly::is_one() const {
    return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1;
}

bool Poly::has_kernels() const {
    for (const auto& t : terms_)
        if (t.mono.kernel) return true;
    return false;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exps[var]);
    return d;
}

std::uint32_t Poly::total_degree() const {
    return terms_.empty() ? 0 : terms_.front().mono.degree();
}

bool Poly::depends_on(std::size_t var) const {
    for (const auto& t : terms_)
        if (t.mono.exps[var]) return true;
    return false;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

// Merge of two sorted term lists with coefficient sign for the second.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c;
        if (i == a.size()) c = -1;
        else if (j == b.size()) c = 1;
        else c = compare(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (negate_b) out.back().coef = -out.back().coef;
        } else {
            mpq_class s = negate_b ? mpq_class(a[i].coef - b[j].coef) : mpq_class(a[i].coef + b[j].coef);
            if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

Poly Poly::scaled(const mpq_class& c) const {
    if (sgn(c) == 0) return Poly(scope_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Poly Poly::times_term(const Monomial& m, const mpq_class& c) const {
    Poly r(scope_);
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    bool reorder = false;
    for (const auto& t : terms_) {
        Term nt{t.mono, t.coef * c};
        for (std::size_t i = 0; i < nt.mono.exps.size(); ++i) nt.mono.exps[i] += m.exps[i];
        if (m.kernel) {
            nt.mono.kernel = scope_->combine(t.mono.kernel, m.kernel);
            reorder = true;
        }
        r.terms_.push_back(std::move(nt));
    }
    if (reorder) r.normalize();
    return r;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.scope_ ? a.scope_ : b.scope_);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0].mono, a.terms_[0].coef);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0].mono, b.terms_[0].coef);
    Poly r(a.scope_);
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    const bool kernels = a.has_kernels() && b.has_kernels();
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) {
            Term nt{s.mono, s.coef * t.coef};
            for (std::size_t i = 0; i < nt.mono.exps.size(); ++i) nt.mono.exps[i] += t.mono.exps[i];
            if (kernels) nt.mono.kernel = a.scope_->combine(s.mono.kernel, t.mono.kernel);
            else if (t.mono.kernel) nt.mono.kernel = t.mono.kernel;
            r.terms_.push_back(std::move(nt));
        }
    }
    r.normalize();
    return r;
}

Poly pow(const Poly& p, unsigned n) {
    Poly result = Poly::constant(p.scope(), 1);
    Poly base = p;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
    std::vector<Poly> out(degree_in(var) + 1, Poly(scope_));
    for (const auto& t : terms_) {
        const auto e = t.mono.exps[var];
        Term nt = t;
        nt.mono.exps[var] = 0;
        out[e].terms_.push_back(std::move(nt));
    }
    return out;
}

Poly Poly::from_coefficients(const Scope* scope, std::size_t var, const std::vector<Poly>& coeffs) {
    Poly r(scope);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& t : coeffs[k].terms_) {
            Term nt = t;
            nt.mono.exps[var] += static_cast<std::uint32_t>(k);
            r.terms_.push_back(std::move(nt));
        }
    }
    r.normalize();
    return r;
}

std::vector<std::pair<const Kernel*, Poly>> Poly::kernel_groups() const {
    std::vector<std::pair<const Kernel*, Poly>> groups;
    for (const auto& t : terms_) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == t.mono.kernel; });
        if (it == groups.end()) {
            groups.emplace_back(t.mono.kernel, Poly(scope_));
            it = std::prev(groups.end());
        }
        Term nt = t;
        nt.mono.kernel = nullptr;
        it->second.terms_.push_back(std::move(nt));
    }
    // Stripping the kernel can break the order between groups, never within one.
    return groups;
}

Poly Poly::partial_base(std::size_t var) const {
    Poly r(scope_);
    for (const auto& t : terms_) {
        const auto e = t.mono.exps[var];
        if (!e) continue;
        Term nt = t;
        nt.coef *= e;
        nt.mono.exps[var] = e - 1;
        r.terms_.push_back(std::move(nt));
    }
    r.normalize();
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (divisor.has_kernels()) throw Error("divide_exact: divisor must be kernel-free");
    if (divisor.is_constant()) return scaled(1 / divisor.lead().coef);
    if (is_zero()) return *this;
    // Cheap rejections: per-variable degrees and the trailing monomial.
    for (std::size_t v = 0; v < divisor.nvars(); ++v)
        if (divisor.degree_in(v) > degree_in(v)) return std::nullopt;
    const auto& tail = terms_.back().mono.exps;
    const auto& dtail = divisor.terms_.back().mono.exps;
    for (std::size_t i = 0; i < dtail.size(); ++i)
        if (tail[i] < dtail[i]) return std::nullopt;

    // Work with primitive integer operands. By Gauss's lemma the quotient is
    // then integral too, so a fractional step coefficient proves inexactness
    // before the remainder has a chance to swell.
    const mpq_class sa = primitive_scale(), sb = divisor.primitive_scale();
    Poly r = scaled(sa);
    const Poly b = divisor.scaled(sb);
    const Term& ld = b.lead();
    std::vector<Term> q;
    while (!r.is_zero()) {
        const Term& lt = r.lead();
        Monomial m = lt.mono;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] < ld.mono.exps[i]) return std::nullopt;
            m.exps[i] -= ld.mono.exps[i];
        }
        if (!mpz_divisible_p(lt.coef.get_num_mpz_t(), ld.coef.get_num_mpz_t())) return std::nullopt;
        mpq_class c = lt.coef / ld.coef;
        r -= b.times_term(m, c);
        q.push_back({std::move(m), std::move(c)});
    }
    return Poly::from_terms(scope_, std::move(q)).scaled(sb / sa);
}

mpq_class Poly::primitive_scale() const {
    if (terms_.empty()) return 1;
    mpz_class l = 1, g = 0;
    for (const auto& t : terms_) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    }
    mpq_class s(l, g);
    s.canonicalize();
    if (sgn(lead().coef) < 0) s = -s;
    return s;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coef != o.terms_[i].coef) return false;
        if (compare(terms_[i].mono, o.terms_[i].mono) != 0) return false;
    }
    return true;
}

}  // namespace frob
