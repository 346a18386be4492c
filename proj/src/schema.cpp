#include "chasekit/schema.hpp"

namespace chasekit {

bool Schema::declare(const std::string& predicate, std::size_t arity) {
    auto [it, inserted] = arities_.emplace(predicate, arity);
    return inserted || it->second == arity;
}

std::optional<std::size_t> Schema::arity_of(const std::string& predicate) const {
    auto it = arities_.find(predicate);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
}

}  // namespace chasekit
