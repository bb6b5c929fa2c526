#include "doctest.h"

#include "frob/errors.hpp"
#include "frob/exterior/vector_field.hpp"
#include "frob/linalg/sampling.hpp"
#include "frob/linalg/span.hpp"
#include "frob/symbolic/parse.hpp"

using namespace frob;

namespace {

ScopePtr scope_of(std::initializer_list<const char*> names) {
    return Scope::create(std::vector<std::string>(names.begin(), names.end()));
}

ExprMatrix matrix(const ScopePtr& s, std::vector<std::vector<const char*>> rows) {
    std::vector<std::vector<Expr>> out;
    for (const auto& r : rows) {
        out.emplace_back();
        for (const char* t : r) out.back().push_back(parse_expr(t, s));
    }
    return ExprMatrix::from_rows(s, out);
}

std::vector<Expr> row_of(const VectorField& v) {
    std::vector<Expr> r;
    for (std::size_t i = 0; i < v.scope()->size(); ++i) r.push_back(v.component(i));
    return r;
}

}  // namespace

TEST_CASE("determinant and rank of a three-form Pfaff matrix") {
    auto s = scope_of({"x1", "x2", "x3"});
    auto w = matrix(s, {{"1", "1", "2"}, {"1", "2", "2"}, {"1", "1", "2 + x2"}});
    CHECK(to_string(determinant(w)) == "x2");
    auto r = generic_rank(w);
    CHECK(r.rank == 3);
    REQUIRE(r.excluded.exprs().size() == 1);
    CHECK(to_string(r.excluded.exprs()[0]) == "x2");
}

TEST_CASE("pivot rule prefers the shortest entry, then row, then column") {
    auto s = scope_of({"x1", "x2", "x3", "x4"});
    auto w = matrix(s, {{"1", "1", "1", "1"}, {"1", "2", "x4", "1"}});
    auto r = generic_rank(w);
    CHECK(r.rank == 2);
    CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1});
    auto w2 = matrix(s, {{"x1 + x2", "x3"}, {"x4^2", "7"}});
    auto r2 = generic_rank(w2);
    CHECK(r2.pivot_rows.front() == 1);
    CHECK(r2.pivot_cols.front() == 1);
}

TEST_CASE("inverse of a completed Pfaff matrix gives the contragredient operators") {
    auto s = scope_of({"x1", "x2", "x3", "x4"});
    auto w = matrix(s, {{"1", "-1", "-(x1*x2 + x2^2 - 2*x3^2 - 2*x3*x4)/(x2*(x3 - x4))",
                         "(x1*x2 + x2^2 - 2*x3*x4 - 2*x4^2)/(x2*(x3 - x4))"},
                        {"1", "1", "-(x1*x2 - x2^2 + 2*x3^2 + 2*x3*x4)/(x2*(x3 - x4))",
                         "(x1*x2 - x2^2 + 2*x3*x4 + 2*x4^2)/(x2*(x3 - x4))"},
                        {"0", "0", "x3/(x2*(x3 - x4))", "-x4/(x2*(x3 - x4))"},
                        {"0", "0", "-1/(x3 - x4)", "1/(x3 - x4)"}});
    auto g = invert(w);
    CHECK((w * g - ExprMatrix::identity(s, 4)).is_zero());
    auto expect = matrix(s, {{"1/2", "1/2", "0", "-x1"},
                             {"-1/2", "1/2", "2*(x3 + x4)", "x2"},
                             {"0", "0", "x2", "x4"},
                             {"0", "0", "x2", "x3"}});
    CHECK((g - expect).is_zero());
    CHECK(is_zero(determinant(w) - parse_expr("2/(x2*(x3 - x4))", s)));
    CHECK_THROWS_AS(invert(matrix(s, {{"x1", "x2"}, {"2*x1", "2*x2"}})), SingularError);
}

TEST_CASE("span certificates for the scaling operators") {
    auto s = scope_of({"x1", "x2", "x3", "x4", "x5"});
    auto l1 = parse_field("x1*@x1 + x2*@x2 + x3*@x3 + x4*@x4 + x5*@x5", s);
    auto l2 = parse_field("x1*@x1 + x2*@x2 + x3*@x3 + x4^2*@x4 + x5^2*@x5", s);
    auto l12 = lie_bracket(l1, l2);
    CHECK(equivalent(l12, parse_field("x4^2*@x4 + x5^2*@x5", s)));
    std::vector<std::vector<Expr>> gens{row_of(l1), row_of(l2)};
    auto c = in_span(row_of(l12), gens, s);
    CHECK_FALSE(c.member());
    CHECK(check_certificate(c, row_of(l12), gens, s));
    gens.push_back(row_of(l12));
    auto m = in_span(row_of(lie_bracket(l1, l12)), gens, s);
    REQUIRE(m.member());
    CHECK(m.coefficients[0].is_zero());
    CHECK(m.coefficients[1].is_zero());
    CHECK(m.coefficients[2].is_one());
    CHECK(check_certificate(m, row_of(lie_bracket(l1, l12)), gens, s));
}

TEST_CASE("solve reports inconsistent and underdetermined systems") {
    auto s = scope_of({"x", "y"});
    auto a = matrix(s, {{"x", "y"}, {"2*x", "2*y"}});
    std::vector<Expr> bad{parse_expr("1", s), parse_expr("3", s)};
    CHECK_THROWS_AS(solve(a, bad), InconsistentError);
    std::vector<Expr> ok{parse_expr("1", s), parse_expr("2", s)};
    CHECK_THROWS_AS(solve(a, ok), UnderdeterminedError);
    auto x = solve(a, ok, std::vector<std::size_t>{1});
    CHECK(x[0].is_zero());
    CHECK(is_zero(x[1] - parse_expr("1/y", s)));
    auto sq = matrix(s, {{"x", "1"}, {"1", "y"}});
    auto z = solve(sq, ok);
    CHECK(is_zero(sq(0, 0) * z[0] + sq(0, 1) * z[1] - ok[0]));
    CHECK(is_zero(sq(1, 0) * z[0] + sq(1, 1) * z[1] - ok[1]));
}

TEST_CASE("sample points are deterministic and avoid the given locus") {
    auto s = scope_of({"x", "y"});
    std::vector<Expr> avoid{parse_expr("x - y", s), parse_expr("1/x", s)};
    auto p = sample_points(s, 8, 42, avoid);
    auto q = sample_points(s, 8, 42, avoid);
    REQUIRE(p.size() == 8);
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(print_point(*s, p[i]) == print_point(*s, q[i]));
        CHECK(*p[i][0] != *p[i][1]);
        CHECK(sgn(*p[i][0]) != 0);
    }
    CHECK_THROWS_AS(sample_points(s, 1, 1, {parse_expr("0*x", s)}, 10), SamplingExhausted);
}

TEST_CASE("float rank for exp-bearing matrices") {
    auto s = scope_of({"x", "y"});
    auto m = matrix(s, {{"exp(x)", "exp(y)"}, {"exp(2*x)", "exp(x + y)"}});
    CHECK(generic_rank(m).rank == 1);
    auto pts = sample_points(s, 3, 7, {});
    for (const auto& p : pts) CHECK(rank_at(m, p) == 1);
    auto m2 = matrix(s, {{"exp(x)", "exp(y)"}, {"exp(2*x)", "x*exp(x + y)"}});
    CHECK(generic_rank(m2).rank == 2);
}
