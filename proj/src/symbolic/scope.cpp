#include "frob/symbolic/scope.hpp"

#include "frob/errors.hpp"
#include "frob/symbolic/expr.hpp"

namespace frob {

bool is_valid_var_name(std::string_view name) {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    for (char c : name)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return name != "exp" && name != "d";
}

std::shared_ptr<Scope> Scope::create(std::vector<std::string> vars) {
    return std::shared_ptr<Scope>(new Scope(std::move(vars)));
}

Scope::Scope(std::vector<std::string> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (!is_valid_var_name(vars_[i])) throw ScopeError("invalid variable name '" + vars_[i] + "'");
        if (!index_.emplace(vars_[i], i).second) throw ScopeError("duplicate variable '" + vars_[i] + "'");
    }
}

std::optional<std::size_t> Scope::index_of(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Scope::require(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw ScopeError("undeclared variable '" + std::string(name) + "'");
    return *i;
}

const Kernel* Scope::intern(const Poly& num, const Poly& den) const {
    if (num.is_zero()) return nullptr;
    if (num.has_kernels() || den.has_kernels()) throw NestedExpError("nested exp is not supported");
    std::string key = print_rational(num, den);
    std::lock_guard lock(mu_);
    auto it = by_key_.find(key);
    if (it != by_key_.end()) return it->second;
    kernels_.push_back(Kernel{num, den, key});
    const Kernel* k = &kernels_.back();
    by_key_.emplace(std::move(key), k);
    return k;
}

const Kernel* Scope::combine(const Kernel* a, const Kernel* b) const {
    if (!a) return b;
    if (!b) return a;
    if (b < a) std::swap(a, b);
    std::lock_guard lock(mu_);
    auto it = products_.find({a, b});
    if (it != products_.end()) return it->second;
    Poly num = a->num * b->den + b->num * a->den;
    Poly den = a->den * b->den;
    canonicalize(num, den);
    const Kernel* k = intern(num, den);
    products_.emplace(std::make_pair(a, b), k);
    return k;
}

const Kernel* Scope::inverse(const Kernel* k) const {
    if (!k) return nullptr;
    return intern(-k->num, k->den);
}

std::size_t Scope::kernel_count() const {
    std::lock_guard lock(mu_);
    return kernels_.size();
}

}  // namespace frob
