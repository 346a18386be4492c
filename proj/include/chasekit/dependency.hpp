#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chasekit/atom.hpp"

namespace chasekit {

/// One head alternative of a disjunctive rule: existentially quantified
/// variables (in declaration order) and a conjunction of atoms.
struct Disjunct {
    std::vector<Term> existentials;
    std::vector<Atom> head;

    bool operator==(const Disjunct&) const = default;
};

/// Disjunctive tuple-generating dependency. A single disjunct makes it a
/// plain TGD.
struct Dtgd {
    std::vector<Atom> body;
    std::vector<Disjunct> disjuncts;

    bool is_tgd() const { return disjuncts.size() == 1; }

    bool operator==(const Dtgd&) const = default;
};

/// Equality-generating dependency: body match forces left = right.
struct Egd {
    std::vector<Atom> body;
    Term left;
    Term right;

    bool operator==(const Egd&) const = default;
};

/// Rule with head "false": a body match makes the theory unsatisfiable.
struct NegConstraint {
    std::vector<Atom> body;

    bool operator==(const NegConstraint&) const = default;
};

using Dependency = std::variant<Dtgd, Egd, NegConstraint>;

const std::vector<Atom>& body_of(const Dependency& d);
bool is_dtgd(const Dependency& d);
bool is_single_disjunct_tgd(const Dependency& d);

/// Stable rule label derived from the position in a dependency set: "r1", ...
std::string dependency_label(std::size_t index);

/// Safety and shape checks: every head variable is either an existential of
/// its disjunct or occurs in the body, existentials are distinct, do not
/// shadow body variables and occur in their head, bodies and heads are
/// nonempty, EGD sides are body variables. Returns a diagnostic message, or
/// nullopt when the dependency is well-formed.
std::optional<std::string> validate_dependency(const Dependency& d);

std::ostream& operator<<(std::ostream& os, const Dependency& d);

}  // namespace chasekit
