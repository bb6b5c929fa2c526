#pragma once

#include "frob/symbolic/poly.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frob {

bool is_valid_var_name(std::string_view name);

// Ordered variable declaration plus the exp-kernel interner for one session.
// Declaration order fixes the monomial order. The interner is the only
// mutable state and is guarded by a mutex.
class Scope {
public:
    static std::shared_ptr<Scope> create(std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t size() const { return vars_.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    std::size_t require(std::string_view name) const;
    const std::string& name(std::size_t i) const { return vars_.at(i); }

    // num/den must be canonical and exp-free; returns nullptr for exp(0).
    const Kernel* intern(const Poly& num, const Poly& den) const;
    // exp(a)*exp(b), nullptr when the sum vanishes. Either side may be nullptr.
    const Kernel* combine(const Kernel* a, const Kernel* b) const;
    const Kernel* inverse(const Kernel* k) const;
    std::size_t kernel_count() const;

    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

private:
    explicit Scope(std::vector<std::string> vars);

    std::vector<std::string> vars_;
    std::map<std::string, std::size_t, std::less<>> index_;

    mutable std::recursive_mutex mu_;
    mutable std::deque<Kernel> kernels_;
    mutable std::map<std::string, const Kernel*, std::less<>> by_key_;
    mutable std::map<std::pair<const Kernel*, const Kernel*>, const Kernel*> products_;
};

using ScopePtr = std::shared_ptr<Scope>;

}  // namespace frob
