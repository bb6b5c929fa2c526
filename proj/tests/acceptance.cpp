// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "frob/cli/commands.hpp"
#include "frob/errors.hpp"
#include "frob/integrability/analyze.hpp"
#include "frob/symbolic/parse.hpp"
#include "frob/systems/convert.hpp"
#include "frob/systems/dsl.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace frob;

namespace {

const std::string kFixtures = FROB_FIXTURE_DIR;

System fixture(const std::string& name) { return load_system(kFixtures + "/" + name + ".dsys"); }

// Collects failed expectations for one criterion.
struct Checks {
    std::vector<std::string> failed;
    void expect(bool ok, const std::string& what) {
        if (!ok) failed.push_back(what);
    }
};

bool expr_is(const Expr& e, const char* text) { return is_zero(e - parse_expr(text, e.scope())); }
bool field_is(const VectorField& v, const char* text) { return equivalent(v, parse_field(text, v.scope())); }

IntegralCertificate check(const System& s, const char* f) { return verify_first_integral(s, parse_expr(f, s.scope())); }

std::size_t jacobi_rank(const System& s, std::initializer_list<const char*> fs) {
    std::vector<Expr> v;
    for (const char* f : fs) v.push_back(parse_expr(f, s.scope()));
    return functional_independence(v, s.scope()).rank;
}

void td_rows_match(Checks& c, const TdSystem& td, const std::vector<std::vector<const char*>>& rows,
                   const std::string& tag) {
    c.expect(td.n == rows.size(), tag + ": dependent count");
    for (std::size_t i = 0; i < rows.size() && i < td.n; ++i) {
        c.expect(td.m == rows[i].size(), tag + ": independent count");
        for (std::size_t j = 0; j < rows[i].size() && j < td.m; ++j)
            c.expect(expr_is(td.x(i, j), rows[i][j]),
                     tag + ": entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " + to_string(td.x(i, j)));
    }
}

void ac1(Checks& c) {
    IntegralCertificate f = check(fixture("ex_1_1"), "(1 - x1^2/t1^2 - x2^2 - x3^2)*exp(-2*x1/t1)");
    c.expect(f.valid, "integral verifies");
    c.expect(f.residuals.size() == 2, "two residuals");
    for (const auto& r : f.residuals) c.expect(r.is_zero(), "residual is exactly zero");
}

void ac2(Checks& c) {
    const System s = fixture("ex_1_2");
    CompletenessResult fr = frobenius_td(s.td());
    c.expect(!fr.complete, "Frobenius check fails");
    c.expect(fr.witness && field_is(fr.pairs[*fr.witness].bracket, "(3 - x1)*@x2"), "witness (3 - x1)*@x2");
    c.expect(bracket_closure(td_to_pde(s.td())).defect == 1, "associated pde defect 1");
    c.expect(integral_basis_dimension(s).dimension == 1, "dimension 1");
    c.expect(check(s, "x1*exp(-(t1 + 3*t2))").valid, "integral verifies");

    TdReduction r = td_defect_reduction(s.td());
    const System expected = parse_system("kind: td\nindep: t1 t2 x2\ndep: x1\neq x1: x1 | 3*x1 | 0\n");
    const System reduced{r.reduced, {}};
    c.expect(structurally_equal(reduced, expected), "reduced td matches");
    c.expect(check(reduced, "x1*exp(-(t1 + 3*t2))").valid, "integral verifies on the reduced td");
}

void ac3(Checks& c) {
    const System s = fixture("ex_2_1");
    ClosureResult cl = bracket_closure(s.pde());
    c.expect(cl.defect == 2, "defect 2");
    c.expect(cl.added.size() == 2 &&
                 field_is(cl.added[0].op, "2*x3*x4*@x3 + (1 - x3^2 + x4^2 - x5^2)*@x4 + 2*x4*x5*@x5"),
             "first added generator");
    c.expect(cl.added.size() == 2 &&
                 field_is(cl.added[1].op, "2*x3*x5*@x3 + 2*x4*x5*@x4 + (1 - x3^2 - x4^2 + x5^2)*@x5"),
             "second added generator");
    c.expect(integral_basis_dimension(s).dimension == 1, "dimension 1");
    const char* f = "x3/(1 + x3^2 + x4^2 + x5^2)";
    for (const char* name : {"ex_2_1", "ex_2_1_completed", "ex_3_5"})
        c.expect(check(fixture(name), f).valid, std::string("integral verifies on ") + name);

    const TdReduction r = td_defect_reduction(fixture("ex_3_5").td());
    const PfaffSystem pf = td_to_pfaff(r.reduced);
    const char* d = "(1 - x3^2 + x4^2 + x5^2)";
    const std::string by_x5 = std::string(d) + "/(2*x3*x5)";
    const std::string by_x4 = std::string(d) + "/(2*x3*x4)";
    const std::string over_d3 = "2*x3*x4/" + std::string(d);
    const std::string over_d5 = "2*x3*x5/" + std::string(d);
    td_rows_match(c, pfaff_to_td(pf, std::vector<std::string>{"x5"}), {{"0", "0", by_x5.c_str(), "-x4/x5"}},
                  "pivot x5");
    td_rows_match(c, pfaff_to_td(pf, std::vector<std::string>{"x4"}), {{"0", "0", by_x4.c_str(), "-x5/x4"}},
                  "pivot x4");
    td_rows_match(c, pfaff_to_td(pf, std::vector<std::string>{"x3"}), {{"0", "0", over_d3.c_str(), over_d5.c_str()}},
                  "pivot x3");
}

void ac4(Checks& c) {
    const System s = fixture("ex_2_2");
    ClosureResult cl = bracket_closure(s.pde());
    c.expect(cl.defect == 1, "defect 1");
    PdeSystem n = pde_normalize(cl.completed, std::vector<std::string>{"x1", "x4", "x5"});
    // d/dx1 of y equals minus the off-pivot coefficients of the first normal operator.
    c.expect(expr_is(-n.operators[0].component(1), "-x2/x1"), "coefficient -x2/x1");
    c.expect(expr_is(-n.operators[0].component(2), "-x3/x1"), "coefficient -x3/x1");
    c.expect(n.operators[0].component(0).is_one(), "pivot coefficient 1");
    c.expect(n.operators[0].component(3).is_zero() && n.operators[0].component(4).is_zero(),
             "zero on the other pivots");
    for (const char* f : {"x2/x1", "x3/x1"}) c.expect(check(s, f).valid, std::string(f) + " verifies");
    c.expect(jacobi_rank(s, {"x2/x1", "x3/x1"}) == 2, "Jacobi rank 2");
}

void ac5(Checks& c) {
    const System s = fixture("ex_2_4");
    CompletenessResult r = pde_completeness(s.pde());
    c.expect(r.complete, "complete");
    c.expect(r.pairs.size() == 1 && r.pairs[0].cert.member() && r.pairs[0].cert.coefficients.size() == 2 &&
                 r.pairs[0].cert.coefficients[0].is_one() && r.pairs[0].cert.coefficients[1].is_zero(),
             "[L1,L2] = 1*L1 + 0*L2");
    c.expect(r.pairs.size() == 1 && field_is(r.pairs[0].bracket, "@x1 + @x2 + @x3"), "bracket equals L1");
    c.expect(integral_basis_dimension(s).dimension == 1, "dimension 1");
    c.expect(check(s, "(x2 - x3)/(x1 - x2)").valid, "integral verifies");
}

void ac6(Checks& c) {
    const System s = fixture("ex_3_2");
    c.expect(frobenius_td(s.td()).complete, "completely solvable");
    c.expect(integral_basis_dimension(s).dimension == 3, "dimension 3");
    const auto fs = {"x2*(x1 + 1)/x1^2", "(x1 + 1)/x1*exp(t1 + t2)", "x3/x1*exp(-2*(t1 + 2*t2))"};
    for (const char* f : fs) c.expect(check(s, f).valid, std::string(f) + " verifies");
    c.expect(jacobi_rank(s, fs) == 3, "Jacobi rank 3");

    DimensionResult d = integral_basis_dimension(fixture("ex_3_3"));
    c.expect(d.defect == 2, "second system defect 2");
    c.expect(d.dimension == 0, "second system dimension 0");
}

void ac7(Checks& c) {
    const System s = fixture("ex_4_1");
    c.expect(pfaff_closure_check(s.pfaff(), ClosureMethod::Wedge).closed, "closed by the wedge criterion");
    c.expect(pfaff_closure_check(s.pfaff(), ClosureMethod::Contragredient).closed,
             "closed by the contragredient criterion");
    struct Case {
        const char* f;
        const char* m1;
        const char* m2;
    };
    for (const Case& k : {Case{"2*x1^2 + (x3 + x4)^2", "2", "2*(1 - x2)"},
                          Case{"2*x2^2 + (x3 - x4)^2", "2", "-2*(1 + x2)"}}) {
        IntegralCertificate cert = check(s, k.f);
        c.expect(cert.valid, std::string(k.f) + " verifies");
        c.expect(cert.cert && cert.cert->coefficients.size() == 2 && expr_is(cert.cert->coefficients[0], k.m1) &&
                     expr_is(cert.cert->coefficients[1], k.m2),
                 std::string(k.f) + " multipliers");
    }
    const PfaffSystem& pf = s.pfaff();
    const Expr f1 = parse_expr("2*x1^2 + (x3 + x4)^2", pf.scope);
    const Expr f2 = parse_expr("2*x2^2 + (x3 - x4)^2", pf.scope);
    const Expr f3 = parse_expr("x1^2 - x2^2 + 2*x3*x4", pf.scope);
    for (const auto& pair : {std::vector<Expr>{f1, f2}, std::vector<Expr>{f1, f3}}) {
        PfaffSystem red = pfaff_reduce_by_integrals(pf, pair);
        bool ok = red.forms.size() == 2;
        for (std::size_t i = 0; ok && i < 2; ++i) ok = equivalent(red.forms[i], differential(pair[i]));
        c.expect(ok, "reduction by " + to_string(pair[1]) + " replaces both forms");
    }
}

void ac8(Checks& c) {
    Contragredient g = pfaff_contragredient(fixture("ex_4_3").pfaff());
    c.expect(g.pde.operators.size() == 2, "two contragredient operators");
    if (g.pde.operators.size() == 2) {
        c.expect(field_is(g.pde.operators[0], "2*(x3 + x4)*@x2 + x2*@x3 + x2*@x4"), "third operator");
        c.expect(field_is(g.pde.operators[1], "-x1*@x1 + x2*@x2 + x4*@x3 + x3*@x4"), "fourth operator");
    }

    const System s46 = fixture("ex_4_6");
    c.expect(pfaff_closure_check(s46.pfaff()).closed, "single form closed");
    c.expect(check(s46, "x*y^2*z^3").valid, "x*y^2*z^3 verifies");

    const System s47 = fixture("ex_4_7");
    c.expect(!pfaff_closure_check(s47.pfaff()).closed, "not closed");
    c.expect(bracket_closure(pfaff_contragredient(s47.pfaff()).pde).defect == 1, "contragredient defect 1");
    c.expect(integral_basis_dimension(s47).dimension == 1, "dimension 1");

    const System s48 = fixture("ex_4_8");
    TdSystem td = pfaff_to_td(s48.pfaff(), std::vector<std::string>{"x1", "x2"});
    c.expect(td.indep_names() == std::vector<std::string>{"x3", "x4"}, "independent x3 x4");
    td_rows_match(c, td, {{"-3*x3/(2*x1)", "-3*x4/(2*x1)"}, {"-x3/(2*x2)", "-x4/(2*x2)"}}, "solved system");
    for (const char* f : {"2*x1^2 + 3*x3^2 + 3*x4^2", "2*x2^2 + x3^2 + x4^2"})
        c.expect(check(s48, f).valid, std::string(f) + " verifies");
    c.expect(jacobi_rank(s48, {"2*x1^2 + 3*x3^2 + 3*x4^2", "2*x2^2 + x3^2 + x4^2"}) == 2, "Jacobi rank 2");
}

// The randomized suites live in the property test binary; each is run on its
// own so a failure names the property.
void ac9(Checks& c) {
    const std::vector<std::string> suites = {
        "brackets satisfy antisymmetry and the Jacobi identity",
        "d o d = 0",
        "wedge is graded anticommutative and d obeys the graded Leibniz rule",
        "closure verdict is invariant under nonsingular recombination of the forms",
        "wedge and contragredient criteria agree",
        "symbolic rank agrees with the exact sampled rank",
        "conversions preserve first-integral verdicts across the corpus",
    };
    for (const auto& name : suites) {
        const std::string cmd = std::string("'") + FROB_PROPERTY_BINARY + "' --test-case='" + name + "' 2>&1";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            c.expect(false, "could not start the property binary");
            return;
        }
        std::string out;
        char buf[4096];
        while (std::size_t k = fread(buf, 1, sizeof buf, pipe)) out.append(buf, k);
        const int status = pclose(pipe);
        static const std::regex summary(R"(test cases:\s*1\s*\|\s*1 passed)");
        const bool ran_one = std::regex_search(out, summary);
        c.expect(status == 0 && ran_one, "property suite '" + name + "'");
    }
}

void ac10(Checks& c) {
    auto once = [&](std::string& out) {
        std::ostringstream o, e;
        const int code = cli::run({"check-fixtures", kFixtures, "--json", "--seed", "11"}, o, e);
        out = o.str();
        return code;
    };
    std::string a, b;
    const int ca = once(a), cb = once(b);
    c.expect(ca == 0 && cb == 0, "check-fixtures exits 0");
    c.expect(!a.empty(), "json produced");
    c.expect(a == b, "byte-identical reports");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Checks&)>>> criteria = {
        {"exp-bearing integral of the nonautonomous td system", ac1},
        {"non-solvable td system: witness, defect, reduction", ac2},
        {"defect-2 pde: generators, integral, pivoted td forms", ac3},
        {"defect-1 pde: normalization and integrals", ac4},
        {"complete pde with bracket certificate", ac5},
        {"solvable td with three integrals; dimension-0 td", ac6},
        {"closed Pfaff system: multipliers and reductions", ac7},
        {"contragredient, closed and non-closed Pfaff systems, solved form", ac8},
        {"randomized property suites", ac9},
        {"check-fixtures determinism", ac10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checks c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failed.push_back(std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = c.failed.empty();
        if (!pass) ++failures;
        std::printf("%s AC%zu %s (%.2fs)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
        for (const auto& f : c.failed) std::printf("    %s\n", f.c_str());
    }
    std::printf("%zu/%zu acceptance criteria pass\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
