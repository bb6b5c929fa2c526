#include "frob/cli/commands.hpp"

#include "frob/cli/fixtures.hpp"
#include "frob/errors.hpp"
#include "frob/integrability/analyze.hpp"
#include "frob/symbolic/parse.hpp"
#include "frob/systems/convert.hpp"
#include "frob/systems/dsl.hpp"

#include "CLI11.hpp"

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace frob::cli {

namespace {

struct Flags {
    std::string input;
    bool json = false;
    std::vector<std::string> integrals;
    bool expect_valid = false;
    std::string method = "both";
    std::uint64_t seed = 0;
    std::size_t max_generators = 0;
    CLI::Option* max_generators_opt = nullptr;
    std::string to;
    std::string pivots;
    bool autonomous = false;

    std::optional<std::size_t> cap() const {
        if (max_generators_opt && max_generators_opt->count()) return max_generators;
        return std::nullopt;
    }
};

std::optional<std::vector<std::string>> split_pivots(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void row(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(14) << key << value << "\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::string combination(const std::vector<Expr>& coeffs, const std::vector<std::string>& labels) {
    std::vector<std::string> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!is_zero(coeffs[i])) terms.push_back("(" + to_string(coeffs[i]) + ")*" + labels.at(i));
    return terms.empty() ? "0" : join(terms, " + ");
}

std::string pair_text(const PairCertificate& p, const std::vector<std::string>& labels) {
    std::string s = "[" + labels.at(p.first) + "," + labels.at(p.second) + "] = " + to_string(p.bracket);
    if (p.cert.member()) return s + "  in span: " + combination(p.cert.coefficients, labels);
    return s + "  not in span, minor " + to_string(p.cert.minor);
}

std::string certificate_text(const IntegralCertificate& c) {
    std::string s = to_string(c.integral) + "  " + (c.valid ? "valid" : "invalid");
    if (c.cert && c.cert->member()) s += "  dF = " + combination(c.cert->coefficients, c.labels);
    if (!c.valid && !c.witness_text.empty()) s += "  nonzero at " + c.witness_text;
    return s;
}

void excluded_rows(std::ostream& out, const Locus& l) {
    for (const auto& e : l.printed()) row(out, "excluded", e + " != 0");
}

void print_report(std::ostream& out, const System& s, const AnalysisReport& r) {
    if (!s.meta.name.empty()) row(out, "system", s.meta.name);
    row(out, "kind", kind_name(r.kind));
    row(out, "vars", join(r.vars, " "));
    if (!r.rank_ok) row(out, "rank", "deficient");
    row(out, r.verdict_name, yes_no(r.verdict));
    if (r.completeness) {
        row(out, "jacobian", yes_no(r.jacobian));
        if (r.completeness->witness)
            row(out, "witness", pair_text(r.completeness->pairs[*r.completeness->witness], r.operator_labels));
    }
    if (r.pfaff_closure) {
        const auto& pc = *r.pfaff_closure;
        std::string m = method_name(pc.method);
        if (pc.wedge_closed) m += ", wedge " + std::string(*pc.wedge_closed ? "closed" : "not closed");
        if (pc.contragredient)
            m += ", contragredient " + std::string(pc.contragredient->complete ? "complete" : "incomplete");
        row(out, "method", m);
        if (pc.wedge_witness)
            row(out, "wedge witness", "form " + std::to_string(*pc.wedge_witness + 1) + ": " + to_string(*pc.wedge_form));
    }
    for (const auto& w : r.completion) row(out, "completion", w);
    row(out, "defect", std::to_string(r.defect));
    row(out, "dimension", std::to_string(r.dimension) + "  (" + r.dimension_note + ")");
    if (!r.basis.empty()) row(out, "basis", join(r.basis, ", "));
    if (r.closure)
        for (const auto& g : r.closure->added) row(out, "added", g.label + " = " + to_string(g.op) + "  from " + g.trace);
    for (const auto& c : r.integrals) row(out, "integral", certificate_text(c));
    if (r.independence)
        row(out, "independence",
            "rank " + std::to_string(r.independence->rank) + (r.independence->independent ? ", independent" : ", dependent"));
    excluded_rows(out, r.excluded);
    row(out, "seed", std::to_string(r.seed));
}

ClosureMethod method_of(const Flags& f) { return parse_method(f.method); }

// Parse errors in --integral refer to the option, not the input file.
std::vector<Expr> parse_integrals(const Flags& f, const ScopePtr& scope) {
    std::vector<Expr> out;
    for (const auto& text : f.integrals) {
        try {
            out.push_back(parse_expr(text, scope));
        } catch (const ParseError& e) {
            throw Error("--integral '" + text + "': column " + std::to_string(e.column()) + ": " + e.message());
        } catch (const ScopeError& e) {
            throw Error("--integral '" + text + "': " + e.what());
        }
    }
    return out;
}

int cmd_analyze(const Flags& f, std::ostream& out) {
    const System s = load_system(f.input);
    parse_integrals(f, s.scope());
    AnalyzeOptions opt;
    opt.integrals = f.integrals;
    opt.method = method_of(f);
    opt.seed = f.seed;
    opt.max_generators = f.cap();
    const AnalysisReport r = analyze(s, opt);
    if (f.json) {
        out << report_to_json(r).dump(2) << "\n";
    } else {
        print_report(out, s, r);
    }
    if (f.expect_valid)
        for (const auto& c : r.integrals)
            if (!c.valid) return kFailure;
    return kOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
    const System s = load_system(f.input);
    std::vector<IntegralCertificate> certs;
    std::vector<Expr> valid;
    for (const auto& e : parse_integrals(f, s.scope())) {
        certs.push_back(verify_first_integral(s, e, f.seed));
        if (certs.back().valid) valid.push_back(certs.back().integral);
    }
    const Independence ind = functional_independence(valid, s.scope());
    bool all_valid = true;
    for (const auto& c : certs) all_valid = all_valid && c.valid;

    if (f.json) {
        Json j;
        j["kind"] = kind_name(s.kind());
        Json arr = Json::array();
        for (const auto& c : certs) arr.push_back(certificate_to_json(c));
        j["integrals"] = arr;
        j["independence"] = Json{{"rank", ind.rank}, {"independent", ind.independent}};
        j["seed"] = f.seed;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& c : certs) {
            row(out, "integral", certificate_text(c));
            if (!c.cert)
                for (std::size_t i = 0; i < c.residuals.size(); ++i)
                    row(out, "  " + c.labels[i] + "(F)", to_string(c.residuals[i]));
            else if (!c.cert->member())
                row(out, "  minor", to_string(c.cert->minor));
        }
        row(out, "independence", "rank " + std::to_string(ind.rank) + (ind.independent ? ", independent" : ", dependent"));
    }
    return f.expect_valid && !all_valid ? kFailure : kOk;
}

System convert(const System& s, const Flags& f) {
    const auto pivots = split_pivots(f.pivots);
    const std::string& to = f.to;
    Metadata meta;
    meta.name = s.meta.name;
    meta.excluded = s.meta.excluded;
    Locus& loc = meta.excluded;
    auto wrap = [&meta](auto body) { return System{std::move(body), meta}; };

    switch (s.kind()) {
        case SystemKind::Td: {
            const TdSystem& td = s.td();
            const auto mode = f.autonomous ? AutonomyMode::Autonomous : AutonomyMode::Nonautonomous;
            if (to == "td") {
                if (!pivots) return wrap(td);
                return wrap(pfaff_to_td(td_to_pfaff(td), pivots, &loc));
            }
            if (to == "pfaff") return wrap(td_to_pfaff(td));
            if (to == "pde") return wrap(td_to_pde(td, mode));
            PdeSystem p = td_to_pde(td, mode);
            if (mode == AutonomyMode::Nonautonomous && !pivots) return wrap(std::move(p));
            return wrap(pde_normalize(p, pivots, &loc));
        }
        case SystemKind::Pde: {
            const PdeSystem& p = s.pde();
            if (to == "pde") return wrap(p);
            std::optional<std::vector<std::string>> chosen = pivots;
            if (!chosen && p.pivots) {
                chosen.emplace();
                for (auto i : *p.pivots) chosen->push_back(p.scope->name(i));
            }
            PdeSystem normal = pde_normalize(p, chosen, &loc);
            if (to == "normal") return wrap(std::move(normal));
            TdSystem td = normal_pde_to_td(normal);
            if (to == "td") return wrap(std::move(td));
            return wrap(td_to_pfaff(td));
        }
        case SystemKind::Pfaff: {
            const PfaffSystem& pf = s.pfaff();
            if (to == "pfaff") return wrap(pf);
            if (to == "td") return wrap(pfaff_to_td(pf, pivots, &loc));
            Contragredient c = pfaff_contragredient(pf);
            loc.merge(c.excluded);
            if (to == "pde") return wrap(std::move(c.pde));
            return wrap(pde_normalize(c.pde, pivots, &loc));
        }
    }
    throw Error("unreachable");
}

int cmd_convert(const Flags& f, std::ostream& out) {
    const System result = convert(load_system(f.input), f);
    if (f.json) {
        out << system_to_json(result).dump(2) << "\n";
    } else {
        out << serialize_dsl(result);
    }
    return kOk;
}

Json added_json(const ClosureResult& c) {
    Json a = Json::array();
    for (const auto& g : c.added) a.push_back(Json{{"label", g.label}, {"operator", to_string(g.op)}, {"trace", g.trace}});
    return a;
}

int cmd_complete(const Flags& f, std::ostream& out, std::ostream& err) {
    const System s = load_system(f.input);
    Metadata meta;
    meta.name = s.meta.name;
    meta.excluded = s.meta.excluded;

    std::optional<TdSystem> reduced;
    ClosureResult closure;
    switch (s.kind()) {
        case SystemKind::Td: {
            const TdSystem& td = s.td();
            closure = bracket_closure(td_to_pde(td), f.cap());
            if (closure.complete && closure.defect < td.n) {
                TdReduction red = td_defect_reduction(td);
                meta.excluded.merge(red.excluded);
                reduced = std::move(red.reduced);
            } else if (closure.complete) {
                meta.warnings.push_back("defect equals n: no reduced td system, showing the completed pde");
            }
            break;
        }
        case SystemKind::Pde:
            closure = bracket_closure(s.pde(), f.cap());
            break;
        case SystemKind::Pfaff: {
            Contragredient c = pfaff_contragredient(s.pfaff());
            meta.excluded.merge(c.excluded);
            closure = bracket_closure(c.pde, f.cap());
            break;
        }
    }
    if (!closure.complete) meta.warnings.push_back("generator cap reached: the closure is incomplete");
    meta.excluded.merge(closure.excluded);
    const System result = reduced ? System{*reduced, meta} : System{closure.completed, meta};
    for (const auto& w : meta.warnings) err << "frob: warning: " << w << "\n";

    if (f.json) {
        Json j;
        j["defect"] = closure.defect;
        j["complete"] = closure.complete;
        j["added_generators"] = added_json(closure);
        j["system"] = system_to_json(result);
        out << j.dump(2) << "\n";
    } else {
        for (const auto& g : closure.added) out << "# " << g.label << " = " << to_string(g.op) << "  from " << g.trace << "\n";
        out << serialize_dsl(result);
    }
    return kOk;
}

int cmd_bracket(const Flags& f, std::ostream& out) {
    const System s = load_system(f.input);
    CompletenessResult c;
    std::vector<std::string> labels;
    switch (s.kind()) {
        case SystemKind::Td:
            c = frobenius_td(s.td());
            for (std::size_t j = 0; j < s.td().m; ++j) labels.push_back("X" + std::to_string(j + 1));
            break;
        case SystemKind::Pde:
            c = pde_completeness(s.pde());
            labels = s.pde().labels;
            break;
        case SystemKind::Pfaff: {
            Contragredient g = pfaff_contragredient(s.pfaff());
            c = pde_completeness(g.pde);
            c.excluded.merge(g.excluded);
            labels = g.pde.labels;
            break;
        }
    }
    if (f.json) {
        Json j;
        j["complete"] = c.complete;
        j["jacobian"] = c.jacobian;
        Json pairs = Json::array();
        for (const auto& p : c.pairs) pairs.push_back(pair_to_json(p, labels));
        j["brackets"] = pairs;
        j["excluded_locus"] = locus_to_json(c.excluded);
        out << j.dump(2) << "\n";
    } else {
        for (const auto& p : c.pairs) out << pair_text(p, labels) << "\n";
        row(out, "complete", yes_no(c.complete));
        row(out, "jacobian", yes_no(c.jacobian));
        excluded_rows(out, c.excluded);
    }
    return kOk;
}

int cmd_check_fixtures(const Flags& f, std::ostream& out) {
    const FixtureSummary s = check_fixtures(f.input, f.seed);
    if (f.json) {
        out << summary_to_json(s).dump(2) << "\n";
    } else {
        out << summary_to_text(s);
    }
    return s.failed ? kFailure : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integrability checks for total differential, pde and Pfaff systems", "frob"};
    app.require_subcommand(1);
    Flags f;

    auto input = [&f](CLI::App* c, const char* what) { c->add_option("input", f.input, what)->required(); };
    auto common = [&f](CLI::App* c) {
        c->add_flag("--json", f.json, "Emit JSON");
        c->add_option("--seed", f.seed, "Seed for sampled witnesses (default 0)");
    };
    auto integrals = [&f](CLI::App* c) {
        c->add_option("--integral", f.integrals, "Candidate first integral (repeatable)")->expected(1)->take_all();
        c->add_flag("--expect-valid", f.expect_valid, "Exit 1 if any integral is invalid");
    };
    auto cap = [&f](CLI::App* c) {
        f.max_generators_opt = c->add_option("--max-generators", f.max_generators, "Closure cap (default n)");
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Verdict, defect, dimension and certificates");
    input(analyze_cmd, "System file (.dsys)");
    common(analyze_cmd);
    integrals(analyze_cmd);
    cap(analyze_cmd);
    analyze_cmd->add_option("--method", f.method, "Pfaff closure check")
        ->check(CLI::IsMember({"wedge", "contragredient", "both"}));

    CLI::App* verify_cmd = app.add_subcommand("verify", "Check candidate first integrals");
    input(verify_cmd, "System file (.dsys)");
    common(verify_cmd);
    integrals(verify_cmd);
    verify_cmd->get_option("--integral")->required();

    CLI::App* convert_cmd = app.add_subcommand("convert", "Convert between td, pde, normal and pfaff forms");
    input(convert_cmd, "System file (.dsys)");
    common(convert_cmd);
    convert_cmd->add_option("--to", f.to, "Target form")->required()->check(CLI::IsMember({"td", "pde", "pfaff", "normal"}));
    convert_cmd->add_option("--pivots", f.pivots, "Comma-separated pivot variables");
    convert_cmd->add_flag("--autonomous", f.autonomous, "td -> pde on the dependent variables only");

    CLI::App* complete_cmd = app.add_subcommand("complete", "Bracket closure; td systems are reduced");
    input(complete_cmd, "System file (.dsys)");
    common(complete_cmd);
    cap(complete_cmd);

    CLI::App* bracket_cmd = app.add_subcommand("bracket", "Pairwise brackets with span certificates");
    input(bracket_cmd, "System file (.dsys)");
    common(bracket_cmd);

    CLI::App* fixtures_cmd = app.add_subcommand("check-fixtures", "Run a fixture directory against its sidecars");
    input(fixtures_cmd, "Fixture directory");
    common(fixtures_cmd);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(f, out);
        if (verify_cmd->parsed()) return cmd_verify(f, out);
        if (convert_cmd->parsed()) return cmd_convert(f, out);
        if (complete_cmd->parsed()) return cmd_complete(f, out, err);
        if (bracket_cmd->parsed()) return cmd_bracket(f, out);
        if (fixtures_cmd->parsed()) return cmd_check_fixtures(f, out);
    } catch (const ParseError& e) {
        err << "frob: " << f.input << ":" << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "frob: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace frob::cli
