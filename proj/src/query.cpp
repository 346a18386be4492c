#include "chasekit/query.hpp"

#include <map>

namespace chasekit {

std::pair<Term, Term> make_equality(Term a, Term b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

namespace {

// Union-find over terms; representatives prefer ground terms, then the
// least term in canonical order.
class Unifier {
public:
    Term find(Term t) {
        auto it = parent_.find(t);
        if (it == parent_.end()) return t;
        Term root = find(it->second);
        parent_.insert_or_assign(std::move(t), root);
        return root;
    }

    // false when two distinct ground terms collide
    bool unite(const Term& a, const Term& b) {
        Term ra = find(a);
        Term rb = find(b);
        if (ra == rb) return true;
        if (ra.is_ground() && rb.is_ground()) return false;
        Term rep = pick_representative(ra, rb);
        if (!(ra == rep)) parent_.insert_or_assign(ra, rep);
        if (!(rb == rep)) parent_.insert_or_assign(rb, rep);
        return true;
    }

private:
    static Term pick_representative(const Term& a, const Term& b) {
        if (a.is_ground()) return a;
        if (b.is_ground()) return b;
        return a < b ? a : b;
    }

    std::map<Term, Term> parent_;
};

}  // namespace

std::optional<ConjunctiveQuery> normalize_query(const ConjunctiveQuery& q) {
    Unifier unifier;
    for (const auto& [lhs, rhs] : q.equalities) {
        if (!unifier.unite(lhs, rhs)) return std::nullopt;
    }
    ConjunctiveQuery out;
    out.name = q.name;
    out.answer_terms.reserve(q.answer_terms.size());
    for (const Term& t : q.answer_terms) {
        out.answer_terms.push_back(unifier.find(t));
    }
    out.body.reserve(q.body.size());
    for (const Atom& a : q.body) {
        Atom rewritten{a.predicate, {}};
        rewritten.args.reserve(a.args.size());
        for (const Term& t : a.args) rewritten.args.push_back(unifier.find(t));
        out.body.push_back(std::move(rewritten));
    }
    return out;
}

}  // namespace chasekit
