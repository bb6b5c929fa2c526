#include "frob/linalg/sampling.hpp"

#include "frob/errors.hpp"

#include <random>

namespace frob {
namespace {

bool acceptable(const std::vector<Expr>& avoid, const PointVec& p) {
    for (const auto& e : avoid) {
        try {
            if (vanishes_at(e, p)) return false;
        } catch (const DivisionByZero&) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<PointVec> sample_points(const ScopePtr& scope, std::size_t count, std::uint64_t seed,
                                    const std::vector<Expr>& avoid, std::size_t max_attempts) {
    std::mt19937_64 rng(seed);
    std::vector<PointVec> out;
    for (std::size_t k = 0; k < count; ++k) {
        bool ok = false;
        for (std::size_t attempt = 0; attempt < max_attempts && !ok; ++attempt) {
            PointVec p(scope->size());
            for (auto& v : p) {
                const long num = static_cast<long>(rng() % 19) - 9;
                const long den = static_cast<long>(rng() % 5) + 1;
                mpq_class q(num, den);
                q.canonicalize();
                v = q;
            }
            if (acceptable(avoid, p)) {
                out.push_back(std::move(p));
                ok = true;
            }
        }
        if (!ok) throw SamplingExhausted("no admissible sample point after " + std::to_string(max_attempts) + " draws");
    }
    return out;
}

std::size_t rank_at(const ExprMatrix& m, const PointVec& point) {
    bool exp_free = true;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) exp_free = exp_free && m(i, j).is_exp_free();

    std::size_t rank = 0;
    if (exp_free) {
        std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = evaluate_exact(m(i, j), point);
        for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
            std::size_t r = rank;
            while (r < m.rows() && sgn(a[r][c]) == 0) ++r;
            if (r == m.rows()) continue;
            std::swap(a[r], a[rank]);
            for (std::size_t i = rank + 1; i < m.rows(); ++i) {
                if (sgn(a[i][c]) == 0) continue;
                const mpq_class f = a[i][c] / a[rank][c];
                for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
            }
            ++rank;
        }
        return rank;
    }

    constexpr unsigned bits = 256;
    std::vector<std::vector<BigFloat>> a;
    BigFloat scale(bits);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        a.emplace_back();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            a.back().push_back(evaluate_float(m(i, j), point, bits));
            BigFloat t(bits);
            mpfr_abs(t.get(), a.back().back().get(), MPFR_RNDN);
            if (mpfr_cmp(t.get(), scale.get()) > 0) scale = t;
        }
    }
    BigFloat tol(bits);
    mpfr_set_str(tol.get(), "1e-40", 10, MPFR_RNDN);
    mpfr_mul(tol.get(), tol.get(), scale.get(), MPFR_RNDN);
    BigFloat t(bits), f(bits);
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t best = m.rows();
        BigFloat best_abs(bits);
        for (std::size_t r = rank; r < m.rows(); ++r) {
            mpfr_abs(t.get(), a[r][c].get(), MPFR_RNDN);
            if (mpfr_cmp(t.get(), tol.get()) > 0 && mpfr_cmp(t.get(), best_abs.get()) > 0) {
                best = r;
                best_abs = t;
            }
        }
        if (best == m.rows()) continue;
        std::swap(a[best], a[rank]);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            mpfr_div(f.get(), a[i][c].get(), a[rank][c].get(), MPFR_RNDN);
            for (std::size_t j = c; j < m.cols(); ++j) {
                mpfr_mul(t.get(), f.get(), a[rank][j].get(), MPFR_RNDN);
                mpfr_sub(a[i][j].get(), a[i][j].get(), t.get(), MPFR_RNDN);
            }
        }
        ++rank;
    }
    return rank;
}

std::optional<PointVec> nonzero_witness(const Expr& e, std::uint64_t seed, std::size_t tries) {
    if (!e.scope() || e.is_zero()) return std::nullopt;
    try {
        auto pts = sample_points(e.scope(), 1, seed, {e}, tries);
        return pts.front();
    } catch (const SamplingExhausted&) {
        return std::nullopt;
    }
}

std::string print_point(const Scope& scope, const PointVec& point) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (!point[i]) continue;
        if (!first) s += ", ";
        s += scope.name(i) + "=" + point[i]->get_str();
        first = false;
    }
    return s + "}";
}

}  // namespace frob
