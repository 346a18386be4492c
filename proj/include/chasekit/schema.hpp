#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace chasekit {

/// Predicate arities, inferred from first occurrence. declare() returns
/// false when a predicate reappears with a different arity.
class Schema {
public:
    bool declare(const std::string& predicate, std::size_t arity);
    std::optional<std::size_t> arity_of(const std::string& predicate) const;
    const std::map<std::string, std::size_t>& predicates() const {
        return arities_;
    }

private:
    std::map<std::string, std::size_t> arities_;
};

}  // namespace chasekit
