#pragma once

#include "frob/systems/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frob {

enum class AutonomyMode { Nonautonomous, Autonomous };

// Operators X_j = d/dt_j + sum_i x(i,j) d/dx_i on the joint (t, x) scope.
std::vector<VectorField> td_operators(const TdSystem& td);

// Nonautonomous: the X_j above, already normal with pivots t_j.
// Autonomous: sum_i x(i,j) d/dx_i on the x-only scope; ConversionError if x depends on t.
PdeSystem td_to_pde(const TdSystem& td, AutonomyMode mode = AutonomyMode::Nonautonomous);

// Normal form N = U_pivots^{-1} U. Pivots default to the elimination pivot
// columns (sorted by declaration order). Adds det(U_pivots) factors to `excluded`.
PdeSystem pde_normalize(const PdeSystem& pde, const std::optional<std::vector<std::string>>& pivots = std::nullopt,
                        Locus* excluded = nullptr);

// Normal system -> td with indep = pivots and x(s, j) = coefficient of d/dx_s in N_j.
TdSystem normal_pde_to_td(const PdeSystem& pde);

// eta_i = dx_i - sum_j x(i,j) dt_j.
PfaffSystem td_to_pfaff(const TdSystem& td);

// Solves the forms for the pivot differentials: dx_p = -w_p^{-1} w_rest dx_rest.
TdSystem pfaff_to_td(const PfaffSystem& pf, const std::optional<std::vector<std::string>>& pivots = std::nullopt,
                     Locus* excluded = nullptr);

struct Contragredient {
    std::vector<KForm> completion;       // the n-m forms appended to the system
    ExprMatrix extended;                 // n x n
    ExprMatrix inverse;                  // column i holds the coefficients of G_i
    std::vector<VectorField> operators;  // G_1..G_n
    PdeSystem pde;                       // G_{m+1}..G_n
    Locus excluded;
};

// Completion: the system's explicit completion forms if present, otherwise
// d(x_k) for every non-pivot column of the elimination on the form matrix.
Contragredient pfaff_contragredient(const PfaffSystem& pf);

// Replaces the forms at the pivot columns of the multiplier matrix by the dF.
// ConversionError if some F is not a first integral or the F are dependent.
PfaffSystem pfaff_reduce_by_integrals(const PfaffSystem& pf, const std::vector<Expr>& integrals,
                                      Locus* excluded = nullptr);

}  // namespace frob
