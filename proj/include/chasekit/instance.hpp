#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>

#include "chasekit/atom.hpp"

namespace chasekit {

/// A finite set of variable-free atoms. Set semantics, canonical iteration
/// order (predicate name, then argument text). Inserting an atom that
/// contains a variable throws.
class Instance {
public:
    using const_iterator = std::set<Atom>::const_iterator;

    Instance() = default;
    Instance(std::initializer_list<Atom> atoms);

    /// Returns true when the atom was not already present.
    bool insert(Atom atom);
    bool contains(const Atom& atom) const { return atoms_.count(atom) > 0; }

    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    const_iterator begin() const { return atoms_.begin(); }
    const_iterator end() const { return atoms_.end(); }
    const std::set<Atom>& atoms() const { return atoms_; }

    /// Atoms of one predicate, contiguous in canonical order.
    std::pair<const_iterator, const_iterator> with_predicate(
        const std::string& predicate) const;

    /// All ground terms occurring in some atom.
    std::set<Term> active_domain() const;

    /// Replaces every occurrence of `from` with `to` (EGD null merging);
    /// duplicates collapse under set semantics.
    void replace_term(const Term& from, const Term& to);

    bool operator==(const Instance&) const = default;

private:
    std::set<Atom> atoms_;
};

std::ostream& operator<<(std::ostream& os, const Instance& instance);

}  // namespace chasekit
