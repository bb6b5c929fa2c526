#include "doctest.h"

#include "frob/errors.hpp"
#include "frob/symbolic/parse.hpp"
#include "frob/systems/convert.hpp"
#include "frob/systems/dsl.hpp"
#include "frob/systems/json_io.hpp"
#include "support.hpp"

#include <filesystem>

using namespace frob;
using namespace frob::test;

namespace {

ParseError parse_failure(const std::string& text) {
    try {
        parse_system(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for:\n" << text);
    return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("DSL parses the three kinds") {
    System a = fixture("ex_1_2");
    REQUIRE(a.kind() == SystemKind::Td);
    CHECK(a.td().m == 2);
    CHECK(a.td().n == 2);
    CHECK(a.meta.name == "ex_1_2");
    CHECK(expr_is(a.td().x(1, 0), "1 + x1 + 2*x2"));

    System b = fixture("ex_2_1");
    REQUIRE(b.kind() == SystemKind::Pde);
    CHECK(b.pde().operators.size() == 2);
    CHECK(b.scope()->size() == 5);
    REQUIRE(b.pde().pivots);
    CHECK(*b.pde().pivots == std::vector<std::size_t>{0, 1});

    System c = fixture("ex_4_3");
    REQUIRE(c.kind() == SystemKind::Pfaff);
    CHECK(c.pfaff().forms.size() == 2);
    CHECK(c.pfaff().completion.size() == 2);
    CHECK(c.pfaff().completion_labels == std::vector<std::string>{"w3", "w4"});
}

TEST_CASE("DSL rejects invalid systems with positions") {
    auto e = parse_failure("kind: pfaff\nvars: x1 x2\nform w1: d(x1) + x2*d(x2)\nform w2: 2*d(x1) + 2*x2*d(x2)\n");
    CHECK(e.line() == 3);
    CHECK(e.message().find("linearly dependent") != std::string::npos);

    e = parse_failure("kind: td\nindep: t\ndep: x y\neq x: x + z\neq y: 1\n");
    CHECK(e.line() == 4);
    CHECK(e.column() == 11);

    e = parse_failure("kind: td\nindep: t1 t2\ndep: x\neq x: 1\n");
    CHECK(e.message().find("expected 2 entries") != std::string::npos);

    e = parse_failure("kind: pde\nvars: x y\nop L1: @x\nop L1: @y\n");
    CHECK(e.line() == 4);

    e = parse_failure("kind: pde\nvars: x x\nop L1: @x\n");
    CHECK(e.message().find("duplicate variable") != std::string::npos);

    e = parse_failure("kind: pde\nvars: x y\nop L1: @x + y*@y\npivots: y\n");
    CHECK(e.message().find("not normal") != std::string::npos);

    e = parse_failure("kind: pfaff\nvars: x y\nform w: d(x)\nbogus: 1\n");
    CHECK(e.line() == 4);

    e = parse_failure("kind: td\nindep: t\ndep: x y\neq x: 1\n");
    CHECK(e.message().find("no equation for 'y'") != std::string::npos);

    e = parse_failure("kind: pfaff\nvars: x y z\nform w: d(x)\ncomplete c: d(y)\n");
    CHECK(e.message().find("completion") != std::string::npos);
}

TEST_CASE("td with more independent than dependent variables warns") {
    System s = parse_system("kind: td\nindep: t1 t2\ndep: x\neq x: 1 | 2\n");
    REQUIRE(s.meta.warnings.size() == 1);
    CHECK(s.meta.warnings[0].find("more independent") != std::string::npos);
}

TEST_CASE("DSL and JSON serialization round-trip every fixture") {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
        if (entry.path().extension() != ".dsys") continue;
        ++count;
        System s = load_system(entry.path().string());
        CAPTURE(entry.path().filename().string());
        System again = parse_system(serialize_dsl(s));
        CHECK(structurally_equal(s, again));
        CHECK(again.meta.name == s.meta.name);
        System from_json = system_from_json(system_to_json(s));
        CHECK(structurally_equal(s, from_json));
        CHECK(system_to_json(from_json).dump() == system_to_json(s).dump());
    }
    CHECK(count >= 17);
}

TEST_CASE("JSON carries kind, variables and entries") {
    Json j = system_to_json(fixture("ex_4_6"));
    CHECK(j["kind"] == "pfaff");
    CHECK(j["vars"].size() == 3);
    CHECK(j["entries"].size() == 1);
    CHECK(j["entries"][0]["form"] == "y*z*d(x) + 2*x*z*d(y) + 3*x*y*d(z)");
    CHECK(j["metadata"]["excluded_locus"].is_array());
}

TEST_CASE("td_to_pde, nonautonomous and autonomous") {
    const TdSystem g = fixture("ex_1_3").td();
    PdeSystem pde = td_to_pde(g);
    const PdeSystem expected = fixture("ex_2_3").pde();
    REQUIRE(pde.operators.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) CHECK(equivalent(rescope(pde.operators[j], expected.scope), expected.operators[j]));
    CHECK(pde.pivots == expected.pivots);

    const TdSystem auton = fixture("ex_3_5").td();
    PdeSystem a = td_to_pde(auton, AutonomyMode::Autonomous);
    CHECK(a.scope->vars() == std::vector<std::string>{"x3", "x4", "x5"});
    CHECK(field_is(a.operators[0], "x5*@x4 - x4*@x5"));
    CHECK(field_is(a.operators[1], "2*x3*x5*@x3 + 2*x4*x5*@x4 + (1 - x3^2 - x4^2 + x5^2)*@x5"));
    // Nonautonomous conversion of the same system reproduces the pde fixture.
    PdeSystem n = td_to_pde(auton);
    const PdeSystem l = fixture("ex_2_1").pde();
    for (std::size_t j = 0; j < 2; ++j) CHECK(equivalent(rescope(n.operators[j], l.scope), l.operators[j]));

    CHECK_THROWS_AS(td_to_pde(fixture("ex_1_1").td(), AutonomyMode::Autonomous), ConversionError);

    TdSystem zero = TdSystem::make({"t1", "t2"}, {"x"});
    PdeSystem z = td_to_pde(zero);
    CHECK(field_is(z.operators[0], "@t1"));
    CHECK(field_is(z.operators[1], "@t2"));
}

TEST_CASE("pde_normalize picks the requested normal form") {
    System s = parse_system(
        "kind: pde\nvars: x1 x2 x3 x4 x5\n"
        "op L1: x1*@x1 + x2*@x2 + x3*@x3 + x4*@x4 + x5*@x5\n"
        "op L2: x1*@x1 + x2*@x2 + x3*@x3 + x4^2*@x4 + x5^2*@x5\n"
        "op L12: x4^2*@x4 + x5^2*@x5\n");
    Locus excluded;
    PdeSystem n1 = pde_normalize(s.pde(), std::vector<std::string>{"x1", "x4", "x5"}, &excluded);
    // partial_x1 y = -x2/x1 partial_x2 y - x3/x1 partial_x3 y.
    CHECK(expr_is(-n1.operators[0].component(1), "-x2/x1"));
    CHECK(expr_is(-n1.operators[0].component(2), "-x3/x1"));
    CHECK(field_is(n1.operators[1], "@x4"));
    CHECK(field_is(n1.operators[2], "@x5"));
    auto printed = excluded.printed();
    CHECK(std::find(printed.begin(), printed.end(), "x1") != printed.end());

    PdeSystem n2 = pde_normalize(s.pde(), std::vector<std::string>{"x2", "x4", "x5"});
    CHECK(field_is(n2.operators[0], "x1/x2*@x1 + @x2 + x3/x2*@x3"));

    PdeSystem twice = pde_normalize(n1, std::vector<std::string>{"x1", "x4", "x5"});
    for (std::size_t j = 0; j < 3; ++j) CHECK(equivalent(twice.operators[j], n1.operators[j]));

    PdeSystem autop = pde_normalize(s.pde());
    REQUIRE(autop.pivots);
    PdeSystem again = pde_normalize(autop);
    CHECK(again.pivots == autop.pivots);
    for (std::size_t j = 0; j < 3; ++j) CHECK(equivalent(again.operators[j], autop.operators[j]));

    CHECK_THROWS_AS(pde_normalize(s.pde(), std::vector<std::string>{"x1", "x2", "x3"}), SingularError);
}

TEST_CASE("normal_pde_to_td recovers the associated equation") {
    System s = parse_system(
        "kind: pde\nvars: t1 t2 x1 x2\n"
        "op N1: @t1 + x1*@x1\nop N2: @t2 + 3*x1*@x1\nop N3: @x2\npivots: t1 t2 x2\n");
    TdSystem td = normal_pde_to_td(s.pde());
    CHECK(td.indep_names() == std::vector<std::string>{"t1", "t2", "x2"});
    CHECK(td.dep_names() == std::vector<std::string>{"x1"});
    CHECK(expr_is(td.x(0, 0), "x1"));
    CHECK(expr_is(td.x(0, 1), "3*x1"));
    CHECK(td.x(0, 2).is_zero());

    // The correspondence runs both ways.
    PdeSystem back = td_to_pde(td);
    for (std::size_t j = 0; j < 3; ++j) CHECK(equivalent(rescope(back.operators[j], s.scope()), s.pde().operators[j]));

    PdeSystem unpivoted = s.pde();
    unpivoted.pivots.reset();
    CHECK_THROWS_AS(normal_pde_to_td(unpivoted), ConversionError);

    System zero = parse_system("kind: pde\nvars: a b\nop N1: @a\npivots: a\n");
    TdSystem zt = normal_pde_to_td(zero.pde());
    CHECK(zt.x(0, 0).is_zero());
}

TEST_CASE("td and pfaff convert into each other") {
    const TdSystem td = fixture("ex_1_2").td();
    PfaffSystem pf = td_to_pfaff(td);
    REQUIRE(pf.forms.size() == 2);
    CHECK(form_is(pf.forms[0], "d(x1) - x1*d(t1) - 3*x1*d(t2)"));
    CHECK(form_is(pf.forms[1], "d(x2) - (1 + x1 + 2*x2)*d(t1) - (x1 + 3*x2)*d(t2)"));

    TdSystem back = pfaff_to_td(pf, std::vector<std::string>{"x1", "x2"});
    CHECK(back.indep_names() == td.indep_names());
    CHECK(back.dep_names() == td.dep_names());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(is_zero(rescope(back.x(i, j), td.scope) - td.x(i, j)));

    TdSystem zero = TdSystem::make({"t"}, {"x", "y"});
    PfaffSystem zf = td_to_pfaff(zero);
    CHECK(form_is(zf.forms[0], "d(x)"));
    CHECK(form_is(zf.forms[1], "d(y)"));
}

TEST_CASE("pfaff_to_td with chosen pivots reproduces the solved system") {
    const PfaffSystem pf = fixture("ex_4_8").pfaff();
    Locus excluded;
    TdSystem td = pfaff_to_td(pf, std::vector<std::string>{"x1", "x2"}, &excluded);
    CHECK(td.dep_names() == std::vector<std::string>{"x1", "x2"});
    CHECK(td.indep_names() == std::vector<std::string>{"x3", "x4"});
    CHECK(expr_is(td.x(0, 0), "-3/2*x3/x1"));
    CHECK(expr_is(td.x(0, 1), "-3/2*x4/x1"));
    CHECK(expr_is(td.x(1, 0), "-1/2*x3/x2"));
    CHECK(expr_is(td.x(1, 1), "-1/2*x4/x2"));
    auto printed = excluded.printed();
    std::string joined;
    for (const auto& f : printed) joined += f + "; ";
    CAPTURE(joined);
    for (const char* f : {"x1", "x2", "2*x1 + x2 + 3"})
        CHECK(std::find(printed.begin(), printed.end(), f) != printed.end());

    System reread = parse_system(serialize_dsl(System{td, {}}));
    CHECK(structurally_equal(reread, System{td, {}}));

    System square = parse_system("kind: pfaff\nvars: a b\nform w1: d(a)\nform w2: d(b)\n");
    TdSystem sq = pfaff_to_td(square.pfaff());
    CHECK(sq.m == 0);
    CHECK(sq.n == 2);

    CHECK_THROWS_AS(pfaff_to_td(fixture("ex_4_7").pfaff(), std::vector<std::string>{"x1", "x4"}), SingularError);
}

TEST_CASE("contragredient operators") {
    Contragredient c = pfaff_contragredient(fixture("ex_4_3").pfaff());
    REQUIRE(c.pde.operators.size() == 2);
    CHECK(field_is(c.pde.operators[0], "2*(x3 + x4)*@x2 + x2*@x3 + x2*@x4"));
    CHECK(field_is(c.pde.operators[1], "-x1*@x1 + x2*@x2 + x4*@x3 + x3*@x4"));
    CHECK(field_is(c.operators[0], "1/2*@x1 - 1/2*@x2"));
    CHECK(field_is(c.operators[1], "1/2*@x1 + 1/2*@x2"));

    Contragredient d = pfaff_contragredient(fixture("ex_4_7").pfaff());
    REQUIRE(d.completion.size() == 2);
    CHECK(form_is(d.completion[0], "d(x3)"));
    CHECK(form_is(d.completion[1], "d(x4)"));
    CHECK(field_is(d.operators[0], "2*@x1 - @x2"));
    CHECK(field_is(d.operators[1], "-@x1 + @x2"));
    CHECK(field_is(d.pde.operators[0], "(x4 - 2)*@x1 + (1 - x4)*@x2 + @x3"));
    CHECK(field_is(d.pde.operators[1], "-@x1 + @x4"));

    Contragredient e = pfaff_contragredient(fixture("ex_4_6").pfaff());
    CHECK(e.pde.operators.size() == 2);
    System one = parse_system("kind: pfaff\nvars: x y\nform w: y*d(x) - x*d(y)\n");
    CHECK(pfaff_contragredient(one.pfaff()).pde.operators.size() == 1);
}

TEST_CASE("contragredient identity dF = sum G_i(F) w_i") {
    for (const char* name : {"ex_4_1", "ex_4_3", "ex_4_6", "ex_4_7", "ex_4_8"}) {
        CAPTURE(name);
        const PfaffSystem pf = fixture(name).pfaff();
        Contragredient c = pfaff_contragredient(pf);
        const std::size_t m = pf.forms.size();
        const auto& v = pf.scope->vars();
        std::vector<std::string> samples = {v[0] + "^2*" + v[1], "exp(" + v[0] + ")*" + v[1] + " + 1",
                                            v[1] + "/(" + v[0] + " + 3)"};
        for (const auto& text : samples) {
            Expr f = parse_expr(text, pf.scope);
            KForm sum(pf.scope, 1);
            for (std::size_t i = 0; i < v.size(); ++i) {
                const KForm& w = i < m ? pf.forms[i] : c.completion[i - m];
                sum += w.scaled(apply(c.operators[i], f));
            }
            CHECK(equivalent(sum, differential(f)));
        }
    }
}

TEST_CASE("reduction of a Pfaff system by known integrals") {
    const PfaffSystem pf = fixture("ex_4_1").pfaff();
    Expr f1 = parse_expr("2*x1^2 + (x3 + x4)^2", pf.scope);
    Expr f2 = parse_expr("2*x2^2 + (x3 - x4)^2", pf.scope);
    Expr f3 = parse_expr("x1^2 - x2^2 + 2*x3*x4", pf.scope);

    PfaffSystem both = pfaff_reduce_by_integrals(pf, {f1, f2});
    REQUIRE(both.forms.size() == 2);
    CHECK(equivalent(both.forms[0], differential(f1)));
    CHECK(equivalent(both.forms[1], differential(f2)));

    PfaffSystem sigma = pfaff_reduce_by_integrals(pf, {f1});
    REQUIRE(sigma.forms.size() == 2);
    CHECK(form_is(sigma.forms[0], "4*x1*d(x1) + 2*(x3 + x4)*d(x3) + 2*(x3 + x4)*d(x4)"));
    CHECK(form_is(sigma.forms[1], "x1*d(x1) - x2*d(x2) + x4*d(x3) + x3*d(x4)"));

    PfaffSystem mixed = pfaff_reduce_by_integrals(pf, {f1, f3});
    CHECK(equivalent(mixed.forms[1], differential(f3)));

    PfaffSystem none = pfaff_reduce_by_integrals(pf, {});
    CHECK(equivalent(none.forms[0], pf.forms[0]));

    CHECK_THROWS_AS(pfaff_reduce_by_integrals(pf, {parse_expr("x1", pf.scope)}), ConversionError);
    CHECK_THROWS_AS(pfaff_reduce_by_integrals(pf, {f1, f1 * f1}), ConversionError);
}
