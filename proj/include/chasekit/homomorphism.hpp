#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "chasekit/instance.hpp"
#include "chasekit/query.hpp"
#include "chasekit/substitution.hpp"

namespace chasekit {

struct NotBooleanError : std::logic_error {
    NotBooleanError() : std::logic_error("query arity must be 0") {}
};

/// Backtracking search for homomorphisms from a conjunction into an
/// instance. Atoms are processed left to right, candidate instance atoms in
/// canonical order, so the enumeration order is deterministic. Constants
/// match themselves; nulls in the conjunction match themselves unless the
/// seed maps them elsewhere. The seed may bind variables not occurring in
/// the conjunction; those bindings are carried through unchanged.
///
/// `visit` returns false to stop the enumeration; the function returns true
/// when the enumeration ran to completion.
bool for_each_homomorphism(const std::vector<Atom>& conjunction,
                           const Instance& instance, const Substitution& seed,
                           const std::function<bool(const Substitution&)>& visit);

/// All extensions of `seed` mapping the conjunction into the instance, in
/// canonical order. The empty conjunction yields exactly the seed.
std::vector<Substitution> find_homomorphisms(const std::vector<Atom>& conjunction,
                                             const Instance& instance,
                                             const Substitution& seed = {});

/// True iff some homomorphism maps the (boolean, possibly unnormalized)
/// query body into the instance. Throws NotBooleanError for arity > 0.
bool evaluate_bcq(const ConjunctiveQuery& q, const Instance& instance);

/// Images of the answer terms under every homomorphism of the query body,
/// restricted to all-constant tuples; tuples that touch a labelled null are
/// excluded. Tuples hold constant names.
std::set<std::vector<std::string>> answers(const ConjunctiveQuery& q,
                                           const Instance& instance);

}  // namespace chasekit
