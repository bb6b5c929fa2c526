#include "frob/linalg/matrix.hpp"

#include "frob/errors.hpp"

#include <algorithm>
#include <limits>

namespace frob {

ExprMatrix::ExprMatrix(ScopePtr scope, std::size_t rows, std::size_t cols)
    : scope_(std::move(scope)), rows_(rows), cols_(cols), data_(rows * cols, Expr::constant(scope_, 0)) {}

ExprMatrix ExprMatrix::identity(const ScopePtr& scope, std::size_t n) {
    ExprMatrix m(scope, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr::constant(scope, 1);
    return m;
}

ExprMatrix ExprMatrix::from_rows(const ScopePtr& scope, const std::vector<std::vector<Expr>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExprMatrix m(scope, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) {
            const Expr& e = rows[i][j];
            if (e.scope() && e.scope() != scope) throw ScopeError("matrix entry from a different scope");
            m(i, j) = e.scope() ? e : Expr::constant(scope, 0);
        }
    }
    return m;
}

std::vector<Expr> ExprMatrix::row(std::size_t i) const {
    return std::vector<Expr>(data_.begin() + static_cast<long>(i * cols_),
                             data_.begin() + static_cast<long>((i + 1) * cols_));
}

std::vector<Expr> ExprMatrix::column(std::size_t j) const {
    std::vector<Expr> c;
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
}

ExprMatrix ExprMatrix::transpose() const {
    ExprMatrix t(scope_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ExprMatrix ExprMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    ExprMatrix s(scope_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

bool ExprMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
    if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
    ExprMatrix r(a.scope(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Expr s = Expr::constant(a.scope(), 0);
            for (std::size_t k = 0; k < a.cols(); ++k)
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix difference shape mismatch");
    ExprMatrix r(a.scope(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

namespace {

Poly primitive(const Poly& p) { return p.scaled(p.primitive_scale()); }

// Monomial factors x_v and the squarefree part of what remains.
std::vector<Poly> split_factor(Poly p) {
    std::vector<Poly> parts;
    const Scope* sc = p.scope();
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        const Poly x = Poly::variable(sc, v);
        bool divided = false;
        while (p.depends_on(v)) {
            auto q = p.divide_exact(x);
            if (!q) break;
            p = std::move(*q);
            divided = true;
        }
        if (divided) parts.push_back(x);
    }
    for (std::size_t v = 0; v < p.nvars() && !p.is_constant(); ++v) {
        if (!p.depends_on(v)) continue;
        Poly g = gcd(p, p.partial_base(v));
        if (!g.is_constant()) p = *p.divide_exact(g);
    }
    if (!p.is_constant()) parts.push_back(primitive(p));
    return parts;
}

}  // namespace

// Keeps the kernel-free entries pairwise coprime so the same hypersurface is
// never listed twice.
void Locus::add_factor(const Expr& e) {
    if (e.is_constant()) return;
    const ScopePtr& scope = e.scope();
    Expr f = e;
    if (sgn(f.numerator().lead().coef) < 0) f = -f;
    if (!f.denominator().is_one() || f.numerator().has_kernels()) {
        for (const auto& x : exprs_)
            if (x.same(f)) return;
        exprs_.push_back(std::move(f));
        return;
    }
    std::vector<Poly> work = split_factor(f.numerator());
    while (!work.empty()) {
        Poly p = std::move(work.back());
        work.pop_back();
        for (std::size_t i = 0; i < exprs_.size() && !p.is_constant(); ++i) {
            const Expr& x = exprs_[i];
            if (!x.denominator().is_one() || x.numerator().has_kernels()) continue;
            const Poly& q = x.numerator();
            Poly g = gcd(p, q);
            if (g.is_constant()) continue;
            p = primitive(*p.divide_exact(g));
            if (!(primitive(g) == primitive(q))) {
                work.push_back(primitive(*q.divide_exact(g)));
                exprs_[i] = Expr::from_poly(scope, primitive(g));
            }
        }
        if (!p.is_constant()) exprs_.push_back(Expr::from_poly(scope, primitive(p)));
    }
}

void Locus::add_pivot(const Expr& pivot) {
    if (!pivot.scope()) return;
    add_factor(Expr::from_poly(pivot.scope(), pivot.numerator()));
    add_factor(Expr::from_poly(pivot.scope(), pivot.denominator()));
}

void Locus::merge(const Locus& o) {
    for (const auto& e : o.exprs_) add_factor(e);
}

std::vector<std::string> Locus::printed() const {
    std::vector<std::string> out;
    for (const auto& e : exprs_) out.push_back(to_string(e));
    return out;
}

namespace {

struct Candidate {
    std::size_t size = std::numeric_limits<std::size_t>::max();
    std::size_t row = 0, col = 0;
    bool found = false;
};

int permutation_sign(std::vector<std::size_t> p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

RankResult generic_rank(const ExprMatrix& input) {
    ExprMatrix m = input;
    RankResult res;
    std::vector<bool> row_used(m.rows(), false), col_used(m.cols(), false);
    Expr prev = Expr::constant(m.scope(), 1);
    while (true) {
        Candidate best;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (row_used[i]) continue;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (col_used[j] || m(i, j).is_zero()) continue;
                const std::size_t sz = print_size(m(i, j));
                if (!best.found || sz < best.size) best = Candidate{sz, i, j, true};
            }
        }
        if (!best.found) break;
        const std::size_t pr = best.row, pc = best.col;
        const Expr p = m(pr, pc);
        res.pivot_rows.push_back(pr);
        res.pivot_cols.push_back(pc);
        res.pivots.push_back(p);
        res.excluded.add_pivot(p);
        row_used[pr] = true;
        col_used[pc] = true;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (row_used[i]) continue;
            const Expr f = m(i, pc);
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (col_used[j]) continue;
                Expr v = p * m(i, j);
                if (!f.is_zero() && !m(pr, j).is_zero()) v -= f * m(pr, j);
                m(i, j) = prev.is_one() ? v : v / prev;
            }
            m(i, pc) = Expr::constant(m.scope(), 0);
        }
        prev = p;
    }
    res.rank = res.pivots.size();
    return res;
}

Expr determinant(const ExprMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    if (m.rows() == 0) return Expr::constant(m.scope(), 1);
    RankResult r = generic_rank(m);
    if (r.rank < m.rows()) return Expr::constant(m.scope(), 0);
    const int sign = permutation_sign(r.pivot_rows) * permutation_sign(r.pivot_cols);
    return sign > 0 ? r.pivots.back() : -r.pivots.back();
}

namespace {

// Row index in [from, rows) with the smallest nonzero entry in column c.
std::optional<std::size_t> pick_row(const std::vector<std::vector<Expr>>& a, std::size_t from,
                                    const std::vector<bool>& used, std::size_t c) {
    std::optional<std::size_t> best;
    std::size_t best_size = 0;
    for (std::size_t i = from; i < a.size(); ++i) {
        if (used[i] || a[i][c].is_zero()) continue;
        const std::size_t sz = print_size(a[i][c]);
        if (!best || sz < best_size) {
            best = i;
            best_size = sz;
        }
    }
    return best;
}

// Gauss-Jordan on rows of `a`; returns pivot (row, col) pairs in column order.
std::vector<std::pair<std::size_t, std::size_t>> reduce(std::vector<std::vector<Expr>>& a, std::size_t ncols,
                                                        Locus* excluded) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::vector<bool> used(a.size(), false);
    for (std::size_t c = 0; c < ncols; ++c) {
        auto r = pick_row(a, 0, used, c);
        if (!r) continue;
        const Expr p = a[*r][c];
        if (excluded) excluded->add_pivot(p);
        for (auto& v : a[*r])
            if (!v.is_zero()) v /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == *r || a[i][c].is_zero()) continue;
            const Expr f = a[i][c];
            for (std::size_t j = 0; j < a[i].size(); ++j)
                if (!a[*r][j].is_zero()) a[i][j] -= f * a[*r][j];
        }
        used[*r] = true;
        pivots.emplace_back(*r, c);
    }
    return pivots;
}

}  // namespace

ExprMatrix invert(const ExprMatrix& m, Locus* excluded) {
    if (m.rows() != m.cols()) throw SingularError("cannot invert a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<Expr>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = m.row(i);
        for (std::size_t j = 0; j < n; ++j) a[i].push_back(Expr::constant(m.scope(), i == j ? 1 : 0));
    }
    auto pivots = reduce(a, n, excluded);
    if (pivots.size() < n) throw SingularError("matrix is generically singular");
    ExprMatrix inv(m.scope(), n, n);
    for (const auto& [r, c] : pivots)
        for (std::size_t j = 0; j < n; ++j) inv(c, j) = a[r][n + j];
    return inv;
}

std::vector<Expr> solve(const ExprMatrix& am, const std::vector<Expr>& b,
                        const std::optional<std::vector<std::size_t>>& pivot_cols, Locus* excluded) {
    if (b.size() != am.rows()) throw Error("right-hand side length differs from row count");
    const std::size_t n = am.cols();
    std::vector<std::vector<Expr>> a(am.rows());
    for (std::size_t i = 0; i < am.rows(); ++i) {
        a[i] = am.row(i);
        a[i].push_back(b[i].scope() ? b[i] : Expr::constant(am.scope(), 0));
    }
    std::vector<std::size_t> order;
    if (pivot_cols) {
        order = *pivot_cols;
        for (std::size_t j = 0; j < n; ++j)
            if (std::find(order.begin(), order.end(), j) == order.end()) order.push_back(j);
        for (auto& row : a) {
            std::vector<Expr> perm;
            for (auto j : order) perm.push_back(row[j]);
            perm.push_back(row[n]);
            row = std::move(perm);
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) order.push_back(j);
    }
    auto pivots = reduce(a, n, excluded);
    std::vector<bool> pivot_row(a.size(), false);
    for (const auto& [r, c] : pivots) pivot_row[r] = true;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!pivot_row[i] && !a[i][n].is_zero()) throw InconsistentError("linear system is inconsistent");
    if (pivots.size() < n && !pivot_cols) throw UnderdeterminedError("linear system is underdetermined");
    std::vector<Expr> x(n, Expr::constant(am.scope(), 0));
    for (const auto& [r, c] : pivots) x[order[c]] = a[r][n];
    return x;
}

}  // namespace frob
