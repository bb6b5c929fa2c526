#include "frob/cli/fixtures.hpp"

#include "frob/errors.hpp"
#include "frob/integrability/analyze.hpp"
#include "frob/systems/dsl.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace frob::cli {

namespace {

const std::set<std::string> kVerdictKeys = {"solvable", "complete", "closed"};
const std::set<std::string> kKnownKeys = {"solvable", "complete", "closed", "defect", "dimension", "integrals"};

Json read_sidecar(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("missing sidecar '" + p.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("sidecar '" + p.string() + "': " + e.what());
    }
    if (!j.is_object()) throw Error("sidecar '" + p.string() + "': expected an object");
    for (const auto& [key, value] : j.items())
        if (!kKnownKeys.count(key)) throw Error("sidecar '" + p.string() + "': unknown key '" + key + "'");
    if (j.contains("integrals")) {
        for (const auto& e : j["integrals"])
            if (!e.is_object() || !e.contains("expr") || !e["expr"].is_string())
                throw Error("sidecar '" + p.string() + "': integrals need an 'expr' string");
    }
    return j;
}

void evaluate(FixtureOutcome& o, const fs::path& dsys, const Json& expected, std::uint64_t seed) {
    const System s = load_system(dsys.string());
    AnalyzeOptions opt;
    opt.seed = seed;
    if (expected.contains("integrals"))
        for (const auto& e : expected["integrals"]) opt.integrals.push_back(e["expr"].get<std::string>());
    const AnalysisReport r = analyze(s, opt);

    Json actual = Json::object();
    for (const auto& key : {"solvable", "complete", "closed"})
        if (expected.contains(key)) actual[key] = r.verdict_name == key ? Json(r.verdict) : Json(nullptr);
    if (expected.contains("defect")) actual["defect"] = r.defect;
    if (expected.contains("dimension")) actual["dimension"] = r.dimension;
    if (expected.contains("integrals")) {
        Json ints = Json::array();
        for (std::size_t i = 0; i < r.integrals.size(); ++i)
            ints.push_back(Json{{"expr", opt.integrals[i]}, {"valid", r.integrals[i].valid}});
        actual["integrals"] = ints;
    }
    o.actual = actual;

    for (const auto& [key, value] : expected.items()) {
        if (key == "integrals") {
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (!value[i].contains("valid")) continue;
                const Json& a = actual["integrals"][i]["valid"];
                if (a != value[i]["valid"])
                    o.mismatches.push_back({"integrals[" + std::to_string(i) + "].valid", value[i]["valid"], a});
            }
        } else if (actual[key] != value) {
            o.mismatches.push_back({key, value, actual[key]});
        }
    }
}

}  // namespace

FixtureSummary check_fixtures(const std::string& dir, std::uint64_t seed) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Error("'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".dsys") files.push_back(entry.path());
    if (files.empty()) throw Error("no .dsys fixtures in '" + dir + "'");
    std::sort(files.begin(), files.end());

    // Sidecars are all checked up front so a missing one is an input error,
    // not a half-finished run.
    std::vector<Json> expectations;
    for (const auto& f : files) {
        fs::path side = f;
        side.replace_extension(".expected.json");
        expectations.push_back(read_sidecar(side));
    }

    FixtureSummary summary;
    summary.seed = seed;
    for (std::size_t i = 0; i < files.size(); ++i) {
        FixtureOutcome o;
        o.name = files[i].stem().string();
        try {
            evaluate(o, files[i], expectations[i], seed);
        } catch (const Error& e) {
            o.error = e.what();
        }
        o.pass = o.error.empty() && o.mismatches.empty();
        if (!o.pass) ++summary.failed;
        summary.fixtures.push_back(std::move(o));
    }
    return summary;
}

Json summary_to_json(const FixtureSummary& s) {
    Json j;
    j["seed"] = s.seed;
    j["total"] = s.fixtures.size();
    j["failed"] = s.failed;
    Json arr = Json::array();
    for (const auto& o : s.fixtures) {
        Json f;
        f["name"] = o.name;
        f["pass"] = o.pass;
        if (!o.error.empty()) f["error"] = o.error;
        f["actual"] = o.actual.is_null() ? Json::object() : o.actual;
        Json diff = Json::array();
        for (const auto& m : o.mismatches)
            diff.push_back(Json{{"field", m.field}, {"expected", m.expected}, {"actual", m.actual}});
        f["mismatches"] = diff;
        arr.push_back(f);
    }
    j["fixtures"] = arr;
    return j;
}

std::string summary_to_text(const FixtureSummary& s) {
    std::ostringstream out;
    for (const auto& o : s.fixtures) {
        out << (o.pass ? "PASS " : "FAIL ") << o.name << "\n";
        if (!o.error.empty()) out << "  error: " << o.error << "\n";
        for (const auto& m : o.mismatches)
            out << "  " << m.field << ": expected " << m.expected.dump() << ", got " << m.actual.dump() << "\n";
    }
    out << (s.fixtures.size() - s.failed) << "/" << s.fixtures.size() << " fixtures pass (seed " << s.seed << ")\n";
    return out.str();
}

}  // namespace frob::cli
