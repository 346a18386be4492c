#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/atom.hpp"

namespace chasekit {

/// Stores an equality as an ordered pair so that sets of equalities compare
/// structurally regardless of the order the two sides were written in.
std::pair<Term, Term> make_equality(Term a, Term b);

/// A conjunctive query: answer terms (variables as written; constants can
/// appear after equality elimination), a body of atoms, and a set of
/// equalities. Arity 0 means boolean.
struct ConjunctiveQuery {
    std::string name = "q";
    std::vector<Term> answer_terms;
    std::vector<Atom> body;
    std::set<std::pair<Term, Term>> equalities;

    std::size_t arity() const { return answer_terms.size(); }
    bool is_boolean() const { return answer_terms.empty(); }

    bool operator==(const ConjunctiveQuery&) const = default;
};

/// Eliminates equalities by unification: variable-variable pairs merge to
/// one representative (the least variable name), variable-ground pairs
/// substitute the ground term. Returns nullopt when an equality forces two
/// distinct ground terms equal (the query is unsatisfiable).
std::optional<ConjunctiveQuery> normalize_query(const ConjunctiveQuery& q);

}  // namespace chasekit
