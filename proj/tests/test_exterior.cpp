#include "doctest.h"

#include "frob/exterior/kform.hpp"
#include "frob/exterior/vector_field.hpp"
#include "frob/symbolic/parse.hpp"

using namespace frob;

namespace {

ScopePtr scope_of(std::initializer_list<const char*> names) {
    return Scope::create(std::vector<std::string>(names.begin(), names.end()));
}

}  // namespace

TEST_CASE("bracket of the two-time system with a nonzero commutator") {
    auto s = scope_of({"t1", "t2", "x1", "x2"});
    auto x1 = parse_field("@t1 + x1*@x1 + (1 + x1 + 2*x2)*@x2", s);
    auto x2 = parse_field("@t2 + 3*x1*@x1 + (x1 + 3*x2)*@x2", s);
    auto b = lie_bracket(x1, x2);
    CHECK(equivalent(b, parse_field("(3 - x1)*@x2", s)));
    CHECK(to_string(b) == "(-x1 + 3)*@x2");
    CHECK(equivalent(lie_bracket(x2, x1), -b));
}

TEST_CASE("brackets of the five-variable operator pair") {
    auto s = scope_of({"x1", "x2", "x3", "x4", "x5"});
    auto l1 = parse_field("@x1 + x5*@x4 - x4*@x5", s);
    auto l2 = parse_field("@x2 + 2*x3*x5*@x3 + 2*x4*x5*@x4 + (1 - x3^2 - x4^2 + x5^2)*@x5", s);
    auto l21 = lie_bracket(l2, l1);
    CHECK(equivalent(l21, parse_field("2*x3*x4*@x3 + (1 - x3^2 + x4^2 - x5^2)*@x4 + 2*x4*x5*@x5", s)));
    auto l121 = lie_bracket(l1, l21);
    CHECK(equivalent(l121, parse_field("2*x3*x5*@x3 + 2*x4*x5*@x4 + (1 - x3^2 - x4^2 + x5^2)*@x5", s)));
    CHECK(equivalent(lie_bracket(l21, l121), parse_field("4*x5*@x4 - 4*x4*@x5", s)));
    Expr f = parse_expr("x3/(1 + x3^2 + x4^2 + x5^2)", s);
    for (const auto& op : {l1, l2, l21, l121}) CHECK(apply(op, f).is_zero());
}

TEST_CASE("field printing round-trips") {
    auto s = scope_of({"x1", "x2", "x3"});
    for (const char* text : {"(3 - x1)*@x2", "-x1^2*@x1 + x2/x3*@x3", "-@x1 - 2*@x2", "(x1 + 1)/x2*@x3 - x3*@x1"}) {
        auto v = parse_field(text, s);
        auto back = parse_field(to_string(v), s);
        CHECK(equivalent(v, back));
    }
}

TEST_CASE("exterior derivative of a one-form") {
    auto s = scope_of({"x", "y", "z"});
    auto w = parse_form("y*z*d(x) + 2*x*z*d(y) + 3*x*y*d(z)", s);
    auto dw = exterior_derivative(w);
    CHECK(dw.degree() == 2);
    CHECK(equivalent(dw, parse_form("z*d(x,y) + 2*y*d(x,z) + x*d(y,z)", s, 2)));
    CHECK(exterior_derivative(dw).is_zero());
    CHECK(wedge(dw, w).is_zero());
    auto f = parse_expr("x*y^2*z^3", s);
    CHECK(equivalent(differential(f), w.scaled(parse_expr("y*z^2", s))));
}

TEST_CASE("wedge signs and degree overflow") {
    auto s = scope_of({"x1", "x2", "x3"});
    auto a = parse_form("d(x1)", s);
    auto b = parse_form("d(x2)", s);
    CHECK(equivalent(wedge(a, b), parse_form("d(x1,x2)", s, 2)));
    CHECK(equivalent(wedge(b, a), parse_form("-d(x1,x2)", s, 2)));
    CHECK(wedge(a, a).is_zero());
    auto top = parse_form("d(x1,x2,x3)", s, 3);
    auto over = wedge(top, a);
    CHECK(over.is_zero());
    CHECK(over.degree() == 4);
    CHECK(equivalent(parse_form("d(x2,x1)", s, 2), parse_form("-d(x1,x2)", s, 2)));
    CHECK(equivalent(parse_form(to_string(parse_form("x1^2*d(x1,x3) - x2*d(x2,x3)", s, 2)), s, 2),
                     parse_form("x1^2*d(x1,x3) - x2*d(x2,x3)", s, 2)));
}

TEST_CASE("exterior derivative on a one-form matches the component rule") {
    auto s = scope_of({"x1", "x2", "x3"});
    auto w = parse_form("x2*x3*d(x1) + x1^2*d(x2) + exp(x3)*d(x3)", s);
    auto dw = exterior_derivative(w);
    auto c = w.coefficients();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = i + 1; k < 3; ++k)
            CHECK(is_zero(dw.coefficient({i, k}) - (differentiate(c[k], i) - differentiate(c[i], k))));
}
