#pragma once

#include "frob/linalg/span.hpp"
#include "frob/systems/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frob {

// Bracket [op_first, op_second] and its membership in the span of the operators.
struct PairCertificate {
    std::size_t first = 0, second = 0;
    VectorField bracket{nullptr};
    SpanCertificate cert;
};

struct CompletenessResult {
    bool complete = true;
    bool jacobian = true;  // every bracket is the zero field
    std::vector<PairCertificate> pairs;
    std::optional<std::size_t> witness;  // index into pairs of the first NotMember
    Locus excluded;
};

// Pairwise brackets of the operators of a td system must all vanish.
CompletenessResult frobenius_td(const TdSystem& td);

CompletenessResult pde_completeness(const PdeSystem& pde);

struct AddedGenerator {
    VectorField op{nullptr};
    std::string label;  // B1, B2, ...
    std::string trace;  // "[L1,L2]" or "-[L1,L2]"
    std::size_t first = 0, second = 0;
};

struct ClosureResult {
    std::size_t original_count = 0;
    std::vector<AddedGenerator> added;
    std::size_t defect = 0;
    PdeSystem completed;
    bool complete = true;  // false only when stopped by the generator cap
    Locus excluded;
};

// Pairs (j, k), j < k, in lexicographic order over the current generators; a
// bracket outside the span is sign-normalised, appended, and the scan restarts.
ClosureResult bracket_closure(const PdeSystem& pde, std::optional<std::size_t> max_generators = std::nullopt);

// Multiplies by -1 when the first nonzero component has a negative leading
// numerator coefficient. Returns the sign applied.
int normalize_sign(VectorField& v);

enum class ClosureMethod { Wedge, Contragredient, Both };

struct PfaffClosure {
    bool closed = true;
    ClosureMethod method = ClosureMethod::Both;
    std::optional<bool> wedge_closed;
    std::optional<std::size_t> wedge_witness;  // form index j with dw_j ^ w_1 ^ ... ^ w_m != 0
    std::optional<KForm> wedge_form;
    std::optional<CompletenessResult> contragredient;
    Locus excluded;
};

// `Both` throws MethodDisagreement if the two criteria differ.
PfaffClosure pfaff_closure_check(const PfaffSystem& pf, ClosureMethod method = ClosureMethod::Both);

std::string method_name(ClosureMethod m);
ClosureMethod parse_method(const std::string& s);

}  // namespace frob
