#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chasekit/dependency.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/query.hpp"
#include "chasekit/schema.hpp"

namespace chasekit {

/// A parsed theory: a database of facts, a dependency set, and named
/// queries. The schema is inferred while building and kept for diagnostics;
/// structural equality ignores it.
struct Program {
    Instance facts;
    std::vector<Dependency> dependencies;
    std::vector<ConjunctiveQuery> queries;

    Schema schema;
    // 1-based source lines, parallel to dependencies/queries; diagnostics only.
    std::vector<int> dependency_lines;
    std::vector<int> query_lines;

    bool operator==(const Program& other) const {
        return facts == other.facts && dependencies == other.dependencies &&
               queries == other.queries;
    }
};

/// Re-checks every program invariant (ground constant-only facts, safe
/// dependencies, program-wide arity consistency, answer variables bound by
/// their bodies). Returns a diagnostic, or nullopt when valid.
std::optional<std::string> validate_program(const Program& p);

}  // namespace chasekit
