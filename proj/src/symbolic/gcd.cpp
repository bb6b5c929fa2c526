// Multivariate gcd over Q by recursive content extraction and primitive
// pseudo-remainder sequences in one main variable at a time.

#include "frob/symbolic/poly.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/scope.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace frob {
namespace {

Poly normalized(const Poly& p) { return p.is_zero() ? p : p.scaled(p.primitive_scale()); }

Poly monomial_gcd(const Poly& a, const Poly& b) {
    Exponents m = a.lead().mono.exps;
    auto lower = [&m](const Poly& p) {
        for (const auto& t : p.terms())
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.mono.exps[i]);
    };
    lower(a);
    lower(b);
    Monomial mono;
    mono.exps = m;
    return Poly::from_terms(a.scope(), {Term{std::move(mono), mpq_class(1)}});
}

Poly exact(const Poly& a, const Poly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw Error("internal: inexact division in gcd");
    return *q;
}

Poly content_in(const Poly& p, std::size_t v) {
    Poly g(p.scope());
    for (const auto& c : p.coefficients_in(v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalized(c) : gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Poly primitive_in(const Poly& p, std::size_t v) {
    Poly c = content_in(p, v);
    return c.is_constant() ? normalized(p) : normalized(exact(p, c));
}

Poly pseudo_remainder(Poly a, const Poly& b, std::size_t v) {
    const auto db = b.degree_in(v);
    const Poly lb = b.coefficients_in(v)[db];
    while (!a.is_zero()) {
        const auto da = a.degree_in(v);
        if (da < db) break;
        const Poly la = a.coefficients_in(v)[da];
        Monomial shift;
        shift.exps.assign(a.nvars(), 0);
        shift.exps[v] = da - db;
        a = lb * a - (la * b).times_term(shift, 1);
    }
    return a;
}

// Coprimality shortcut: images in Z_p[x_v] with every other variable fixed.
constexpr std::uint64_t kPrime = 2147483647;  // 2^31 - 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) { return a * b % kPrime; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul_mod(a, a))
        if (e & 1) r = mul_mod(r, a);
    return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

std::optional<std::uint64_t> rational_mod(const mpq_class& q) {
    const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
    if (den == 0) return std::nullopt;
    return mul_mod(mpz_fdiv_ui(q.get_num_mpz_t(), kPrime), inv_mod(den));
}

std::optional<std::vector<std::uint64_t>> univariate_image(const Poly& p, std::size_t v,
                                                           const std::vector<std::uint64_t>& point) {
    std::vector<std::uint64_t> out(p.degree_in(v) + 1, 0);
    for (const auto& t : p.terms()) {
        auto c = rational_mod(t.coef);
        if (!c) return std::nullopt;
        std::uint64_t x = *c;
        for (std::size_t i = 0; i < t.mono.exps.size(); ++i)
            if (i != v && t.mono.exps[i]) x = mul_mod(x, pow_mod(point[i], t.mono.exps[i]));
        out[t.mono.exps[v]] = (out[t.mono.exps[v]] + x) % kPrime;
    }
    return out;
}

std::size_t univariate_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim = [](std::vector<std::uint64_t>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        if (b.size() == 1) return 0;
        const std::uint64_t lead_inv = inv_mod(b.back());
        while (a.size() >= b.size()) {
            const std::uint64_t f = mul_mod(a.back(), lead_inv);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[i + shift] = (a[i + shift] + kPrime - mul_mod(f, b[i])) % kPrime;
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// True when images prove gcd(a, b) constant. A nonconstant gcd depends on a
// shared variable v, and any image in v that keeps both leading coefficients
// (mod p as well) has a gcd of degree >= its degree in v.
bool provably_coprime(const Poly& a, const Poly& b) {
    const std::size_t n = a.nvars();
    for (std::size_t v = 0; v < n; ++v) {
        if (!a.depends_on(v) || !b.depends_on(v)) continue;
        bool proved = false;
        for (unsigned attempt = 0; attempt < 3 && !proved; ++attempt) {
            std::vector<std::uint64_t> point(n);
            for (std::size_t i = 0; i < n; ++i) point[i] = 1000003 * (i + 1) + 7919 * attempt + 104729 * v;
            auto ia = univariate_image(a, v, point);
            auto ib = univariate_image(b, v, point);
            if (!ia || !ib || ia->back() == 0 || ib->back() == 0) continue;  // leading coefficient vanished
            proved = univariate_gcd_degree(std::move(*ia), std::move(*ib)) == 0;
        }
        if (!proved) return false;
    }
    return true;
}

// Heuristic gcd: evaluate one variable at a large integer, recurse, and
// rebuild the candidate from its balanced xi-adic digits. A candidate is
// returned only after it divides both operands; nullopt sends the caller to
// the pseudo-remainder route. Operands must have integer coefficients.
mpz_class max_norm(const Poly& p) {
    mpz_class m = 0;
    for (const auto& t : p.terms()) {
        mpz_class a = abs(t.coef.get_num());
        if (a > m) m = a;
    }
    return m;
}

Poly evaluate_at(const Poly& p, std::size_t v, const mpz_class& xi) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Term u = t;
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), u.mono.exps[v]);
        u.coef *= pw;
        u.mono.exps[v] = 0;
        terms.push_back(std::move(u));
    }
    return Poly::from_terms(p.scope(), std::move(terms));
}

Poly interpolate(const Poly& h, std::size_t v, const mpz_class& xi) {
    std::vector<Term> rest(h.terms().begin(), h.terms().end());
    std::vector<Term> out;
    const mpz_class half = xi / 2;
    for (std::uint32_t power = 0; !rest.empty(); ++power) {
        std::vector<Term> next;
        for (auto& t : rest) {
            mpz_class c = t.coef.get_num();
            mpz_class r;
            mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (r > half) r -= xi;
            if (r != 0) {
                Term d = t;
                d.coef = r;
                d.mono.exps[v] = power;
                out.push_back(std::move(d));
            }
            c -= r;
            c /= xi;
            if (c != 0) {
                t.coef = c;
                next.push_back(std::move(t));
            }
        }
        rest = std::move(next);
    }
    return Poly::from_terms(h.scope(), std::move(out));
}

mpz_class integer_content(const Poly& p) {
    mpz_class c = 0;
    for (const auto& t : p.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coef.get_num_mpz_t());
    return c;
}

// gcd over Z, integer content included: the caller one level up reads the
// gcd of its operands off this value.
std::optional<Poly> heuristic_gcd(const Poly& f, const Poly& g, unsigned depth = 0) {
    const Scope* scope = f.scope();
    if (f.is_zero() || g.is_zero()) return std::nullopt;
    const mpz_class cf = integer_content(f), cg = integer_content(g);
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    std::size_t v = f.nvars();
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (f.depends_on(i) || g.depends_on(i)) {
            v = i;
            break;
        }
    if (v == f.nvars()) return Poly::constant(scope, mpq_class(c));
    if (depth > 64) return std::nullopt;

    const Poly f1 = f.scaled(mpq_class(1, 1) / mpq_class(cf)), g1 = g.scaled(mpq_class(1, 1) / mpq_class(cg));
    // xi >= 2 min(|f|, |g|) + 2 makes a candidate that divides both the gcd.
    mpz_class xi = 2 * std::min<mpz_class>(max_norm(f1), max_norm(g1)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Poly fe = evaluate_at(f1, v, xi), ge = evaluate_at(g1, v, xi);
        if (!fe.is_zero() && !ge.is_zero()) {
            if (auto h = heuristic_gcd(fe, ge, depth + 1)) {
                Poly cand = interpolate(*h, v, xi);
                if (!cand.is_zero()) {
                    cand = normalized(cand);
                    if (cand.is_constant() || (f1.divide_exact(cand) && g1.divide_exact(cand)))
                        return cand.scaled(mpq_class(c));
                }
            }
        }
        const mpz_class quartic = sqrt(sqrt(xi));
        xi = 73794 * xi * quartic / 27011;
    }
    return std::nullopt;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return normalized(b);
    if (b.is_zero()) return normalized(a);
    if (a.has_kernels() || b.has_kernels()) return gcd_general(a, b);
    const Scope* scope = a.scope();
    if (a.is_constant() || b.is_constant()) return Poly::constant(scope, 1);
    if (a.size() == 1 || b.size() == 1) return monomial_gcd(a, b);
    if (provably_coprime(a, b)) return Poly::constant(scope, 1);

    const std::size_t n = a.nvars();
    for (std::size_t v = 0; v < n; ++v) {
        const bool in_a = a.depends_on(v), in_b = b.depends_on(v);
        if (in_a && !in_b) return gcd(content_in(a, v), b);
        if (in_b && !in_a) return gcd(a, content_in(b, v));
    }

    std::size_t v = n;
    std::uint32_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!a.depends_on(i)) continue;
        const auto d = std::max(a.degree_in(i), b.degree_in(i));
        if (v == n || d < best) {
            v = i;
            best = d;
        }
    }

    if (auto h = heuristic_gcd(normalized(a), normalized(b))) return normalized(*h);

    const Poly ca = content_in(a, v), cb = content_in(b, v);
    const Poly c = gcd(ca, cb);
    Poly pa = ca.is_constant() ? a : exact(a, ca);
    Poly pb = cb.is_constant() ? b : exact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

    while (true) {
        Poly r = pseudo_remainder(pa, pb, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            pb = Poly::constant(scope, 1);
            break;
        }
        pa = std::move(pb);
        pb = primitive_in(r, v);
    }
    return normalized(c * pb);
}

Poly gcd_general(const Poly& a, const Poly& b) {
    if (!a.has_kernels() && !b.has_kernels()) return gcd(a, b);
    Poly g(a.scope() ? a.scope() : b.scope());
    for (const Poly* p : {&a, &b}) {
        for (const auto& [kernel, part] : p->kernel_groups()) {
            g = g.is_zero() ? normalized(part) : gcd(g, part);
            if (g.is_constant() && !g.is_zero()) return g;
        }
    }
    return g;
}

}  // namespace frob
