#pragma once

#include "frob/linalg/matrix.hpp"
#include "frob/symbolic/evaluate.hpp"

#include <cstdint>
#include <vector>

namespace frob {

// Deterministic rational points (numerators in [-9, 9], denominators in [1, 5])
// at which every `avoid` expression is defined and nonzero. Gives up with
// SamplingExhausted after `max_attempts` rejected draws per point.
std::vector<PointVec> sample_points(const ScopePtr& scope, std::size_t count, std::uint64_t seed,
                                    const std::vector<Expr>& avoid, std::size_t max_attempts = 2000);

// Rank of the matrix specialised at a point: exact for exp-free entries,
// otherwise MPFR at 256 bits with relative tolerance 1e-40.
std::size_t rank_at(const ExprMatrix& m, const PointVec& point);

// First point at which e is defined and nonzero, if any.
std::optional<PointVec> nonzero_witness(const Expr& e, std::uint64_t seed, std::size_t tries = 64);

std::string print_point(const Scope& scope, const PointVec& point);

}  // namespace frob
