#include "frob/systems/system.hpp"

#include "frob/errors.hpp"

namespace frob {

TdSystem TdSystem::make(const std::vector<std::string>& indep, const std::vector<std::string>& dep) {
    std::vector<std::string> all = indep;
    all.insert(all.end(), dep.begin(), dep.end());
    auto scope = Scope::create(all);
    return TdSystem{scope, indep.size(), dep.size(), ExprMatrix(scope, dep.size(), indep.size())};
}

std::vector<std::string> TdSystem::indep_names() const {
    return std::vector<std::string>(scope->vars().begin(), scope->vars().begin() + static_cast<long>(m));
}

std::vector<std::string> TdSystem::dep_names() const {
    return std::vector<std::string>(scope->vars().begin() + static_cast<long>(m), scope->vars().end());
}

std::vector<Expr> field_row(const VectorField& f) {
    std::vector<Expr> r;
    for (std::size_t i = 0; i < f.scope()->size(); ++i) r.push_back(f.component(i));
    return r;
}

std::vector<std::vector<Expr>> field_rows(const std::vector<VectorField>& fields) {
    std::vector<std::vector<Expr>> rows;
    for (const auto& f : fields) rows.push_back(field_row(f));
    return rows;
}

ExprMatrix PdeSystem::matrix() const { return ExprMatrix::from_rows(scope, field_rows(operators)); }

ExprMatrix PfaffSystem::matrix() const {
    std::vector<std::vector<Expr>> rows;
    for (const auto& w : forms) rows.push_back(w.coefficients());
    ExprMatrix m(scope, rows.size(), scope->size());
    if (!rows.empty()) m = ExprMatrix::from_rows(scope, rows);
    return m;
}

std::string kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::Td: return "td";
        case SystemKind::Pde: return "pde";
        case SystemKind::Pfaff: return "pfaff";
    }
    return "?";
}

const ScopePtr& System::scope() const {
    return std::visit([](const auto& s) -> const ScopePtr& { return s.scope; }, body);
}

namespace {

bool same_forms(const std::vector<KForm>& a, const std::vector<KForm>& b, const ScopePtr& target) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equivalent(rescope(a[i], target), b[i])) return false;
    return true;
}

}  // namespace

bool structurally_equal(const System& a, const System& b) {
    if (a.kind() != b.kind() || a.scope()->vars() != b.scope()->vars()) return false;
    const ScopePtr& target = b.scope();
    switch (a.kind()) {
        case SystemKind::Td: {
            const auto &x = a.td(), &y = b.td();
            if (x.m != y.m) return false;
            for (std::size_t i = 0; i < x.n; ++i)
                for (std::size_t j = 0; j < x.m; ++j)
                    if (!is_zero(rescope(x.x(i, j), target) - y.x(i, j))) return false;
            return true;
        }
        case SystemKind::Pde: {
            const auto &x = a.pde(), &y = b.pde();
            if (x.labels != y.labels || x.pivots != y.pivots) return false;
            for (std::size_t k = 0; k < x.operators.size(); ++k)
                if (!equivalent(rescope(x.operators[k], target), y.operators[k])) return false;
            return true;
        }
        case SystemKind::Pfaff: {
            const auto &x = a.pfaff(), &y = b.pfaff();
            return x.labels == y.labels && x.completion_labels == y.completion_labels &&
                   same_forms(x.forms, y.forms, target) && same_forms(x.completion, y.completion, target);
        }
    }
    return false;
}

}  // namespace frob
