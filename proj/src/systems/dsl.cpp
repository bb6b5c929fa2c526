#include "frob/systems/dsl.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/parse.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace frob {
namespace {

struct Word {
    std::string text;
    std::size_t column;  // 1-based
};

struct Directive {
    std::size_t line;
    std::string keyword;
    std::optional<Word> label;
    std::string body;
    std::size_t body_column;
};

bool is_label(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ';';
    });
}

std::vector<Word> split_words(const std::string& text, std::size_t column) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
            ++i;
            continue;
        }
        std::size_t s = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',' &&
               text[i] != '#')
            ++i;
        out.push_back({text.substr(s, i - s), column + s});
    }
    return out;
}

std::vector<Directive> split_directives(std::string_view text) {
    std::vector<Directive> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        ++line_no;
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            if (end == text.size()) break;
            continue;
        }
        const std::size_t colon = line.find(':');
        const std::size_t hash = line.find('#');
        if (colon == std::string::npos || (hash != std::string::npos && hash < colon))
            throw ParseError(line_no, first + 1, "expected '<directive>:'");
        auto head = split_words(line.substr(0, colon), 1);
        if (head.empty()) throw ParseError(line_no, first + 1, "missing directive name");
        if (head.size() > 2) throw ParseError(line_no, head[2].column, "unexpected '" + head[2].text + "'");
        Directive d;
        d.line = line_no;
        d.keyword = head[0].text;
        if (head.size() == 2) d.label = head[1];
        d.body = line.substr(colon + 1);
        d.body_column = colon + 2;
        out.push_back(std::move(d));
        if (end == text.size()) break;
    }
    return out;
}

std::vector<std::string> names_of(const std::vector<Word>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(w.text);
    return out;
}

}  // namespace

System parse_system(std::string_view text, const std::string& file) {
    const auto directives = split_directives(text);

    std::map<std::string, const Directive*> singles;
    std::vector<const Directive*> rows;
    static const std::set<std::string> single_keys{"kind", "name", "indep", "dep", "vars", "pivots"};
    static const std::set<std::string> row_keys{"eq", "op", "form", "complete"};
    for (const auto& d : directives) {
        if (single_keys.count(d.keyword)) {
            if (d.label) throw ParseError(d.line, d.label->column, "'" + d.keyword + "' takes no label");
            if (!singles.emplace(d.keyword, &d).second)
                throw ParseError(d.line, 1, "duplicate '" + d.keyword + ":' directive");
        } else if (row_keys.count(d.keyword)) {
            if (!d.label) throw ParseError(d.line, 1, "'" + d.keyword + "' needs a name before ':'");
            rows.push_back(&d);
        } else {
            throw ParseError(d.line, 1, "unknown directive '" + d.keyword + "'");
        }
    }

    auto kind_it = singles.find("kind");
    if (kind_it == singles.end()) throw ParseError(1, 1, "missing 'kind:' directive");
    const Directive& kd = *kind_it->second;
    auto kind_words = split_words(kd.body, kd.body_column);
    if (kind_words.size() != 1) throw ParseError(kd.line, kd.body_column, "expected one of td, pde, pfaff");
    const std::string kind = kind_words[0].text;
    if (kind != "td" && kind != "pde" && kind != "pfaff")
        throw ParseError(kd.line, kind_words[0].column, "unknown kind '" + kind + "'");

    auto declared = [&](const char* key) -> std::vector<Word> {
        auto it = singles.find(key);
        if (it == singles.end()) throw ParseError(kd.line, 1, std::string("missing '") + key + ":' directive");
        auto ws = split_words(it->second->body, it->second->body_column);
        for (const auto& w : ws)
            if (!is_valid_var_name(w.text))
                throw ParseError(it->second->line, w.column, "invalid variable name '" + w.text + "'");
        return ws;
    };
    auto forbid = [&](const char* key) {
        auto it = singles.find(key);
        if (it != singles.end())
            throw ParseError(it->second->line, 1, std::string("'") + key + ":' is not valid for kind " + kind);
    };
    auto check_unique = [&](const std::vector<std::pair<Word, std::size_t>>& ws) {
        std::set<std::string> seen;
        for (const auto& [w, line] : ws)
            if (!seen.insert(w.text).second) throw ParseError(line, w.column, "duplicate variable '" + w.text + "'");
    };

    Metadata meta;
    meta.file = file;
    if (auto it = singles.find("name"); it != singles.end()) {
        std::string n = it->second->body;
        n.erase(0, n.find_first_not_of(" \t"));
        n.erase(n.find_last_not_of(" \t") + 1);
        meta.name = n;
    }

    std::set<std::string> labels;
    auto claim_label = [&](const Directive& d) {
        if (!is_label(d.label->text)) throw ParseError(d.line, d.label->column, "invalid name '" + d.label->text + "'");
        if (!labels.insert(d.label->text).second)
            throw ParseError(d.line, d.label->column, "duplicate name '" + d.label->text + "'");
    };
    auto reject_row = [&](const Directive& d) {
        throw ParseError(d.line, 1, "'" + d.keyword + "' rows are not valid for kind " + kind);
    };

    if (kind == "td") {
        forbid("vars");
        forbid("pivots");
        auto indep = declared("indep");
        auto dep = declared("dep");
        std::vector<std::pair<Word, std::size_t>> all;
        for (const auto& w : indep) all.emplace_back(w, singles["indep"]->line);
        for (const auto& w : dep) all.emplace_back(w, singles["dep"]->line);
        check_unique(all);
        if (dep.empty()) throw ParseError(singles["dep"]->line, 1, "no dependent variables");
        TdSystem td = TdSystem::make(names_of(indep), names_of(dep));
        std::vector<bool> seen(td.n, false);
        for (const Directive* d : rows) {
            if (d->keyword != "eq") reject_row(*d);
            auto i = td.scope->index_of(d->label->text);
            if (!i || *i < td.m)
                throw ParseError(d->line, d->label->column, "'" + d->label->text + "' is not a dependent variable");
            const std::size_t row = *i - td.m;
            if (seen[row]) throw ParseError(d->line, d->label->column, "duplicate equation for '" + d->label->text + "'");
            seen[row] = true;
            std::size_t from = 0, col = 0;
            while (true) {
                std::size_t bar = d->body.find('|', from);
                const bool last = bar == std::string::npos;
                std::string piece = d->body.substr(from, last ? std::string::npos : bar - from);
                if (col >= td.m)
                    throw ParseError(d->line, d->body_column + from,
                                     "too many entries (expected " + std::to_string(td.m) + ")");
                td.x(row, col) = parse_expr(piece, td.scope, d->line, d->body_column + from);
                ++col;
                if (last) break;
                from = bar + 1;
            }
            if (col != td.m)
                throw ParseError(d->line, d->body_column,
                                 "expected " + std::to_string(td.m) + " entries, found " + std::to_string(col));
        }
        for (std::size_t i = 0; i < td.n; ++i)
            if (!seen[i])
                throw ParseError(singles["dep"]->line, 1, "no equation for '" + td.scope->name(td.m + i) + "'");
        if (td.m > td.n)
            meta.warnings.push_back("more independent than dependent variables (" + std::to_string(td.m) + " > " +
                                        std::to_string(td.n) + ")");
        return System{std::move(td), std::move(meta)};
    }

    forbid("indep");
    forbid("dep");
    auto vars = declared("vars");
    {
        std::vector<std::pair<Word, std::size_t>> all;
        for (const auto& w : vars) all.emplace_back(w, singles["vars"]->line);
        check_unique(all);
    }
    if (vars.empty()) throw ParseError(singles["vars"]->line, 1, "no variables declared");
    auto scope = Scope::create(names_of(vars));

    if (kind == "pde") {
        PdeSystem pde{scope, {}, {}, std::nullopt};
        std::size_t first_line = kd.line;
        for (const Directive* d : rows) {
            if (d->keyword != "op") reject_row(*d);
            claim_label(*d);
            if (pde.operators.empty()) first_line = d->line;
            pde.operators.push_back(parse_field(d->body, scope, d->line, d->body_column));
            pde.labels.push_back(d->label->text);
        }
        const std::size_t r = pde.operators.empty() ? 0 : generic_rank(pde.matrix()).rank;
        if (r < pde.operators.size())
            throw ParseError(first_line, 1, "operators are linearly dependent (generic rank " + std::to_string(r) +
                                                " < " + std::to_string(pde.operators.size()) + ")");
        if (auto it = singles.find("pivots"); it != singles.end()) {
            const Directive& pd = *it->second;
            auto ws = split_words(pd.body, pd.body_column);
            if (ws.size() != pde.operators.size())
                throw ParseError(pd.line, pd.body_column, "need one pivot per operator");
            std::vector<std::size_t> piv;
            for (const auto& w : ws) {
                auto i = scope->index_of(w.text);
                if (!i) throw ParseError(pd.line, w.column, "undeclared variable '" + w.text + "'");
                if (std::find(piv.begin(), piv.end(), *i) != piv.end())
                    throw ParseError(pd.line, w.column, "duplicate pivot '" + w.text + "'");
                piv.push_back(*i);
            }
            for (std::size_t j = 0; j < piv.size(); ++j)
                for (std::size_t k = 0; k < piv.size(); ++k) {
                    Expr c = pde.operators[j].component(piv[k]);
                    if (!(j == k ? c.is_one() : c.is_zero()))
                        throw ParseError(pd.line, ws[k].column,
                                         "operator " + pde.labels[j] + " is not normal with respect to the pivots");
                }
            pde.pivots = piv;
        }
        return System{std::move(pde), std::move(meta)};
    }

    forbid("pivots");
    PfaffSystem pf{scope, {}, {}, {}, {}};
    std::size_t first_line = kd.line;
    std::size_t completion_line = kd.line;
    for (const Directive* d : rows) {
        if (d->keyword != "form" && d->keyword != "complete") reject_row(*d);
        claim_label(*d);
        KForm w = parse_form(d->body, scope, 1, d->line, d->body_column);
        if (d->keyword == "form") {
            if (pf.forms.empty()) first_line = d->line;
            pf.forms.push_back(std::move(w));
            pf.labels.push_back(d->label->text);
        } else {
            if (pf.completion.empty()) completion_line = d->line;
            pf.completion.push_back(std::move(w));
            pf.completion_labels.push_back(d->label->text);
        }
    }
    if (pf.forms.size() > scope->size())
        throw ParseError(first_line, 1, "more forms than variables");
    const std::size_t r = pf.forms.empty() ? 0 : generic_rank(pf.matrix()).rank;
    if (r < pf.forms.size())
        throw ParseError(first_line, 1, "forms are linearly dependent (generic rank " + std::to_string(r) + " < " +
                                            std::to_string(pf.forms.size()) + ")");
    if (!pf.completion.empty() && pf.completion.size() + pf.forms.size() != scope->size())
        throw ParseError(completion_line, 1,
                         "completion needs exactly " + std::to_string(scope->size() - pf.forms.size()) + " forms");
    return System{std::move(pf), std::move(meta)};
}

System load_system(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str(), path);
}

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += xs[i];
    }
    return s;
}

}  // namespace

std::string serialize_dsl(const System& s) {
    std::ostringstream out;
    if (!s.meta.name.empty()) out << "name: " << s.meta.name << "\n";
    out << "kind: " << kind_name(s.kind()) << "\n";
    switch (s.kind()) {
        case SystemKind::Td: {
            const auto& td = s.td();
            out << "indep: " << join(td.indep_names()) << "\n";
            out << "dep: " << join(td.dep_names()) << "\n";
            for (std::size_t i = 0; i < td.n; ++i) {
                out << "eq " << td.scope->name(td.dep_index(i)) << ":";
                for (std::size_t j = 0; j < td.m; ++j) out << (j ? " | " : " ") << to_string(td.x(i, j));
                out << "\n";
            }
            break;
        }
        case SystemKind::Pde: {
            const auto& p = s.pde();
            out << "vars: " << join(p.scope->vars()) << "\n";
            if (p.pivots) {
                std::vector<std::string> names;
                for (auto i : *p.pivots) names.push_back(p.scope->name(i));
                out << "pivots: " << join(names) << "\n";
            }
            for (std::size_t j = 0; j < p.operators.size(); ++j)
                out << "op " << p.labels[j] << ": " << to_string(p.operators[j]) << "\n";
            break;
        }
        case SystemKind::Pfaff: {
            const auto& p = s.pfaff();
            out << "vars: " << join(p.scope->vars()) << "\n";
            for (std::size_t j = 0; j < p.forms.size(); ++j)
                out << "form " << p.labels[j] << ": " << to_string(p.forms[j]) << "\n";
            for (std::size_t j = 0; j < p.completion.size(); ++j)
                out << "complete " << p.completion_labels[j] << ": " << to_string(p.completion[j]) << "\n";
            break;
        }
    }
    for (const auto& e : s.meta.excluded.printed()) out << "# excluded: " << e << " != 0\n";
    for (const auto& w : s.meta.warnings) out << "# warning: " << w << "\n";
    return out.str();
}

}  // namespace frob
