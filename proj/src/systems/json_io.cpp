#include "frob/systems/json_io.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/parse.hpp"
#include "frob/systems/dsl.hpp"

namespace frob {

Json locus_to_json(const Locus& l) {
    Json a = Json::array();
    for (const auto& e : l.printed()) a.push_back(e);
    return a;
}

Json system_to_json(const System& s) {
    Json j;
    j["kind"] = kind_name(s.kind());
    Json entries = Json::array();
    switch (s.kind()) {
        case SystemKind::Td: {
            const auto& td = s.td();
            j["indep"] = td.indep_names();
            j["dep"] = td.dep_names();
            for (std::size_t i = 0; i < td.n; ++i) {
                Json row = Json::array();
                for (std::size_t k = 0; k < td.m; ++k) row.push_back(to_string(td.x(i, k)));
                entries.push_back(Json{{"dep", td.scope->name(td.dep_index(i))}, {"row", row}});
            }
            break;
        }
        case SystemKind::Pde: {
            const auto& p = s.pde();
            j["vars"] = p.scope->vars();
            for (std::size_t k = 0; k < p.operators.size(); ++k)
                entries.push_back(Json{{"label", p.labels[k]}, {"field", to_string(p.operators[k])}});
            if (p.pivots) {
                Json piv = Json::array();
                for (auto i : *p.pivots) piv.push_back(p.scope->name(i));
                j["pivots"] = piv;
            }
            break;
        }
        case SystemKind::Pfaff: {
            const auto& p = s.pfaff();
            j["vars"] = p.scope->vars();
            for (std::size_t k = 0; k < p.forms.size(); ++k)
                entries.push_back(Json{{"label", p.labels[k]}, {"form", to_string(p.forms[k])}});
            if (!p.completion.empty()) {
                Json c = Json::array();
                for (std::size_t k = 0; k < p.completion.size(); ++k)
                    c.push_back(Json{{"label", p.completion_labels[k]}, {"form", to_string(p.completion[k])}});
                j["completion"] = c;
            }
            break;
        }
    }
    j["entries"] = entries;
    Json meta;
    meta["name"] = s.meta.name;
    meta["excluded_locus"] = locus_to_json(s.meta.excluded);
    meta["warnings"] = s.meta.warnings;
    j["metadata"] = meta;
    return j;
}

// Rebuilds the DSL text and reuses its validation.
System system_from_json(const nlohmann::json& j) {
    try {
        std::string text;
        const auto& meta = j.value("metadata", nlohmann::json::object());
        if (meta.contains("name") && !meta["name"].get<std::string>().empty())
            text += "name: " + meta["name"].get<std::string>() + "\n";
        const std::string kind = j.at("kind").get<std::string>();
        text += "kind: " + kind + "\n";
        auto words = [](const nlohmann::json& a) {
            std::string s;
            for (const auto& w : a) s += " " + w.get<std::string>();
            return s;
        };
        if (kind == "td") {
            text += "indep:" + words(j.at("indep")) + "\n";
            text += "dep:" + words(j.at("dep")) + "\n";
            for (const auto& e : j.at("entries")) {
                text += "eq " + e.at("dep").get<std::string>() + ":";
                bool first = true;
                for (const auto& c : e.at("row")) {
                    text += (first ? " " : " | ") + c.get<std::string>();
                    first = false;
                }
                text += "\n";
            }
        } else {
            text += "vars:" + words(j.at("vars")) + "\n";
            if (j.contains("pivots")) text += "pivots:" + words(j["pivots"]) + "\n";
            const char* key = kind == "pde" ? "field" : "form";
            const char* row = kind == "pde" ? "op " : "form ";
            for (const auto& e : j.at("entries"))
                text += row + e.at("label").get<std::string>() + ": " + e.at(key).get<std::string>() + "\n";
            if (j.contains("completion"))
                for (const auto& e : j["completion"])
                    text += "complete " + e.at("label").get<std::string>() + ": " + e.at("form").get<std::string>() +
                            "\n";
        }
        System s = parse_system(text);
        for (const auto& e : meta.value("excluded_locus", nlohmann::json::array()))
            s.meta.excluded.add_factor(parse_expr(e.get<std::string>(), s.scope()));
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, 0, std::string("malformed system JSON: ") + e.what());
    }
}

}  // namespace frob
