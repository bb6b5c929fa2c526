#include "frob/symbolic/expr.hpp"

#include <sstream>

namespace frob {
namespace {

std::vector<std::string> factors(const Monomial& m, const Scope& scope) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (!m.exps[i]) continue;
        std::string f = scope.name(i);
        if (m.exps[i] > 1) f += "^" + std::to_string(m.exps[i]);
        out.push_back(std::move(f));
    }
    if (m.kernel) out.push_back("exp(" + m.kernel->key + ")");
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

// Body of a term with |coef|; `leading_minus` guards the "-v^k" parse trap.
std::string term_body(const Term& t, const Scope& scope, bool leading_minus) {
    const mpq_class c = abs(t.coef);
    auto fs = factors(t.mono, scope);
    if (fs.empty()) return c.get_str();
    if (c == 1) {
        if (leading_minus && fs.front().find('^') != std::string::npos) return "1*" + join(fs, "*");
        return join(fs, "*");
    }
    return c.get_str() + "*" + join(fs, "*");
}

}  // namespace

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    const Scope& scope = *p.scope();
    std::string s;
    bool first = true;
    for (const auto& t : p.terms()) {
        const bool neg = sgn(t.coef) < 0;
        if (first) {
            if (neg) s += "-";
            s += term_body(t, scope, neg);
            first = false;
        } else {
            s += neg ? " - " : " + ";
            s += term_body(t, scope, false);
        }
    }
    return s;
}

std::string print_rational(const Poly& num, const Poly& den) {
    std::string n = to_string(num);
    if (den.is_one()) return n;
    if (num.size() > 1) n = "(" + n + ")";
    std::string d = to_string(den);
    const bool bare = den.size() == 1 &&
                      (den.lead().mono.is_one() ||
                       (den.lead().coef == 1 && factors(den.lead().mono, *den.scope()).size() == 1));
    if (!bare) d = "(" + d + ")";
    return n + "/" + d;
}

std::string to_string(const Expr& e) {
    if (!e.scope()) return "0";
    return print_rational(e.numerator(), e.denominator());
}

std::size_t print_size(const Expr& e) { return to_string(e).size(); }

}  // namespace frob
