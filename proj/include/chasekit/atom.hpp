#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "chasekit/term.hpp"

namespace chasekit {

/// A predicate applied to an ordered list of terms.
/// Ordering is lexicographic on the predicate name, then argument by
/// argument, which fixes the canonical enumeration order used everywhere.
struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;
    bool mentions(const Term& t) const;

    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

/// One argument slot of a predicate; index is 1-based.
struct Position {
    std::string predicate;
    int index = 1;

    std::string text() const;  // "pred[i]"

    bool operator==(const Position&) const = default;
    auto operator<=>(const Position&) const = default;
};

/// Names of the variables occurring in an atom / a conjunction.
std::set<std::string> variables_of(const Atom& atom);
std::set<std::string> variables_of(const std::vector<Atom>& conjunction);

std::ostream& operator<<(std::ostream& os, const Atom& a);

}  // namespace chasekit
