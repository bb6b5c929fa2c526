#pragma once

#include "frob/linalg/sampling.hpp"
#include "frob/linalg/span.hpp"
#include "frob/systems/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frob {

struct IntegralCertificate {
    Expr integral;
    bool valid = false;
    // td / pde: one residual per operator, labelled like the operators.
    std::vector<std::string> labels;
    std::vector<Expr> residuals;
    // pfaff: dF against the forms; multipliers are cert.coefficients when valid.
    std::optional<SpanCertificate> cert;
    // Invalid: a point where the offending residual (or minor) is nonzero.
    std::optional<PointVec> witness;
    std::string witness_text;
};

// F is rescoped into the system's scope by variable name (ScopeError if it
// uses an undeclared variable).
IntegralCertificate verify_first_integral(const System& s, const Expr& integral, std::uint64_t seed = 0);

struct Independence {
    std::size_t rank = 0;
    bool independent = false;
    Locus excluded;
};

// Generic rank of the Jacobi matrix of the functions over all scope variables.
Independence functional_independence(const std::vector<Expr>& functions, const ScopePtr& scope);

}  // namespace frob
