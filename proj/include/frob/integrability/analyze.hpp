#pragma once

#include "frob/integrability/closure.hpp"
#include "frob/integrability/verify.hpp"
#include "frob/systems/json_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frob {

struct DimensionResult {
    std::size_t dimension = 0;
    std::size_t defect = 0;
    std::string note;  // which formula produced the number
};

// pde: 0 if m = n, else n - m - defect. td: n - defect of the associated pde.
// pfaff: n if m = n, else m - defect of the contragredient pde.
DimensionResult integral_basis_dimension(const System& s, std::optional<std::size_t> max_generators = std::nullopt);

struct TdReduction {
    TdSystem reduced;
    std::size_t defect = 0;
    ClosureResult closure;
    PdeSystem normal;
    Locus excluded;
};

// Closes the associated pde, normalises it on the independent variables plus
// pivot columns of the added generators, and reads back a td system. Variable
// names are kept. ConversionError when the defect equals n.
TdReduction td_defect_reduction(const TdSystem& td);

struct AnalyzeOptions {
    std::vector<std::string> integrals;
    ClosureMethod method = ClosureMethod::Both;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_generators;
};

struct AnalysisReport {
    SystemKind kind = SystemKind::Td;
    std::vector<std::string> vars;
    bool rank_ok = true;
    std::string verdict_name;  // solvable | complete | closed
    bool verdict = true;
    bool jacobian = true;
    std::size_t defect = 0;
    std::size_t dimension = 0;
    std::string dimension_note;
    std::optional<CompletenessResult> completeness;
    std::optional<PfaffClosure> pfaff_closure;
    std::vector<std::string> operator_labels;  // labels used by completeness pairs
    std::optional<ClosureResult> closure;
    std::vector<std::string> completion;  // pfaff: completion forms used
    std::vector<std::string> basis;       // pfaff m = n: coordinate integrals
    Locus excluded;
    std::vector<IntegralCertificate> integrals;
    std::optional<Independence> independence;
    std::uint64_t seed = 0;
};

AnalysisReport analyze(const System& s, const AnalyzeOptions& options = {});

Json report_to_json(const AnalysisReport& r);
Json certificate_to_json(const IntegralCertificate& c);
Json pair_to_json(const PairCertificate& p, const std::vector<std::string>& labels);

}  // namespace frob
