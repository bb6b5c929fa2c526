#pragma once

#include "frob/symbolic/expr.hpp"

#include <optional>
#include <vector>

namespace frob {

class ExprMatrix {
public:
    ExprMatrix(ScopePtr scope, std::size_t rows, std::size_t cols);
    static ExprMatrix identity(const ScopePtr& scope, std::size_t n);
    static ExprMatrix from_rows(const ScopePtr& scope, const std::vector<std::vector<Expr>>& rows);

    const ScopePtr& scope() const { return scope_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Expr& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Expr& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

    std::vector<Expr> row(std::size_t i) const;
    std::vector<Expr> column(std::size_t j) const;
    ExprMatrix transpose() const;
    ExprMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    bool is_zero() const;

private:
    ScopePtr scope_;
    std::size_t rows_, cols_;
    std::vector<Expr> data_;
};

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b);

// Points where a generic conclusion may fail: nonconstant numerators and
// denominators of pivots, deduplicated and sign-normalised.
class Locus {
public:
    void add_factor(const Expr& e);
    void add_pivot(const Expr& pivot);
    void merge(const Locus& o);
    const std::vector<Expr>& exprs() const { return exprs_; }
    std::vector<std::string> printed() const;

private:
    std::vector<Expr> exprs_;
};

struct RankResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;  // in pivot order
    std::vector<std::size_t> pivot_cols;
    std::vector<Expr> pivots;             // fraction-free pivot chain
    Locus excluded;
};

// Fraction-free elimination with full pivoting: the nonzero candidate with the
// smallest printed size wins, ties broken by lowest row, then lowest column.
RankResult generic_rank(const ExprMatrix& m);

Expr determinant(const ExprMatrix& m);
ExprMatrix invert(const ExprMatrix& m, Locus* excluded = nullptr);

// Solve A x = b. Underdetermined systems need pivot_cols (free unknowns set to 0).
std::vector<Expr> solve(const ExprMatrix& a, const std::vector<Expr>& b,
                        const std::optional<std::vector<std::size_t>>& pivot_cols = std::nullopt,
                        Locus* excluded = nullptr);

}  // namespace frob
