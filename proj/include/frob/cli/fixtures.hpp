#pragma once

#include "frob/systems/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace frob::cli {

struct FixtureMismatch {
    std::string field;
    Json expected;
    Json actual;
};

struct FixtureOutcome {
    std::string name;  // file stem
    bool pass = true;
    std::vector<FixtureMismatch> mismatches;
    Json actual;        // same shape as the sidecar
    std::string error;  // analysis threw; counts as a failure
};

struct FixtureSummary {
    std::uint64_t seed = 0;
    std::vector<FixtureOutcome> fixtures;  // sorted by name
    std::size_t failed = 0;
};

// Every *.dsys in `dir` needs a sibling <stem>.expected.json holding a subset
// of {solvable, complete, closed, defect, dimension, integrals:[{expr, valid}]}.
// Throws frob::Error for a missing/unreadable directory, no fixtures, a missing
// sidecar or a sidecar with unknown keys.
FixtureSummary check_fixtures(const std::string& dir, std::uint64_t seed = 0);

Json summary_to_json(const FixtureSummary& s);
std::string summary_to_text(const FixtureSummary& s);

}  // namespace frob::cli
