#pragma once

#include "frob/exterior/kform.hpp"
#include "frob/exterior/vector_field.hpp"
#include "frob/linalg/matrix.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace frob {

// Total differential system dx_i = sum_j x(i,j) dt_j.
// The scope is always indep ++ dep, so indep var j has index j.
struct TdSystem {
    ScopePtr scope;
    std::size_t m = 0;  // independent variables
    std::size_t n = 0;  // dependent variables
    ExprMatrix x;       // n x m

    static TdSystem make(const std::vector<std::string>& indep, const std::vector<std::string>& dep);
    std::size_t indep_index(std::size_t j) const { return j; }
    std::size_t dep_index(std::size_t i) const { return m + i; }
    std::vector<std::string> indep_names() const;
    std::vector<std::string> dep_names() const;
};

// Family of first-order operators; `pivots` marks a normal form where
// operators[j] has coefficient 1 on pivots[j] and 0 on the other pivots.
struct PdeSystem {
    ScopePtr scope;
    std::vector<VectorField> operators;
    std::vector<std::string> labels;
    std::optional<std::vector<std::size_t>> pivots;

    ExprMatrix matrix() const;
};

// Pfaff system of one-forms, with an optional explicit completion used by the
// contragredient construction.
struct PfaffSystem {
    ScopePtr scope;
    std::vector<KForm> forms;
    std::vector<std::string> labels;
    std::vector<KForm> completion;
    std::vector<std::string> completion_labels;

    ExprMatrix matrix() const;
};

enum class SystemKind { Td, Pde, Pfaff };

std::string kind_name(SystemKind k);

struct Metadata {
    std::string name;
    std::string file;
    Locus excluded;
    std::vector<std::string> warnings;
};

struct System {
    std::variant<TdSystem, PdeSystem, PfaffSystem> body;
    Metadata meta;

    SystemKind kind() const { return static_cast<SystemKind>(body.index()); }
    const ScopePtr& scope() const;
    const TdSystem& td() const { return std::get<TdSystem>(body); }
    const PdeSystem& pde() const { return std::get<PdeSystem>(body); }
    const PfaffSystem& pfaff() const { return std::get<PfaffSystem>(body); }
};

// Same kind, variable names, labels, pivots and entries (entries compared by
// exact zero test of the difference). Metadata is ignored.
bool structurally_equal(const System& a, const System& b);

// Matrix rows of a list of fields / coefficient rows of one-forms.
std::vector<std::vector<Expr>> field_rows(const std::vector<VectorField>& fields);
std::vector<Expr> field_row(const VectorField& f);

}  // namespace frob
