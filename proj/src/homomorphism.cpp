#include "chasekit/homomorphism.hpp"

namespace chasekit {

namespace {

// Matches one pattern atom against one ground atom. New variable bindings
// are recorded in `bound` so the caller can undo them on backtrack.
bool try_match(const Atom& pattern, const Atom& ground, Substitution& current,
               std::vector<std::string>& bound) {
    if (pattern.args.size() != ground.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& p = pattern.args[i];
        const Term& g = ground.args[i];
        bool ok = true;
        switch (p.kind()) {
            case Term::Kind::Constant:
                ok = (p == g);
                break;
            case Term::Kind::Null: {
                const Term* img = current.null_image(p);
                ok = ((img ? *img : p) == g);
                break;
            }
            case Term::Kind::Variable: {
                if (const Term* img = current.var_image(p.name())) {
                    ok = (*img == g);
                } else {
                    current.bind(p.name(), g);
                    bound.push_back(p.name());
                }
                break;
            }
        }
        if (!ok) {
            for (const std::string& v : bound) current.unbind(v);
            bound.clear();
            return false;
        }
    }
    return true;
}

bool search(const std::vector<Atom>& conjunction, std::size_t index,
            const Instance& instance, Substitution& current,
            const std::function<bool(const Substitution&)>& visit) {
    if (index == conjunction.size()) return visit(current);
    const Atom& pattern = conjunction[index];
    auto [it, last] = instance.with_predicate(pattern.predicate);
    for (; it != last; ++it) {
        std::vector<std::string> bound;
        if (!try_match(pattern, *it, current, bound)) continue;
        bool keep_going = search(conjunction, index + 1, instance, current, visit);
        for (const std::string& v : bound) current.unbind(v);
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace

bool for_each_homomorphism(const std::vector<Atom>& conjunction,
                           const Instance& instance, const Substitution& seed,
                           const std::function<bool(const Substitution&)>& visit) {
    Substitution current = seed;
    return search(conjunction, 0, instance, current, visit);
}

std::vector<Substitution> find_homomorphisms(const std::vector<Atom>& conjunction,
                                             const Instance& instance,
                                             const Substitution& seed) {
    std::vector<Substitution> result;
    for_each_homomorphism(conjunction, instance, seed,
                          [&result](const Substitution& h) {
                              result.push_back(h);
                              return true;
                          });
    return result;
}

bool evaluate_bcq(const ConjunctiveQuery& q, const Instance& instance) {
    if (!q.is_boolean()) throw NotBooleanError();
    std::optional<ConjunctiveQuery> normalized = normalize_query(q);
    if (!normalized) return false;  // contradictory equalities
    bool found = false;
    for_each_homomorphism(normalized->body, instance, {},
                          [&found](const Substitution&) {
                              found = true;
                              return false;
                          });
    return found;
}

std::set<std::vector<std::string>> answers(const ConjunctiveQuery& q,
                                           const Instance& instance) {
    std::optional<ConjunctiveQuery> normalized = normalize_query(q);
    std::set<std::vector<std::string>> result;
    if (!normalized) return result;
    const std::set<std::string> body_vars = variables_of(normalized->body);
    for (const Term& t : normalized->answer_terms) {
        if (t.is_variable() && !body_vars.count(t.name())) {
            throw std::logic_error("answer variable " + t.name() +
                                   " does not occur in the query body");
        }
    }
    for_each_homomorphism(
        normalized->body, instance, {}, [&](const Substitution& h) {
            std::vector<std::string> tuple;
            tuple.reserve(normalized->answer_terms.size());
            for (const Term& t : normalized->answer_terms) {
                Term img = h.image(t);
                if (!img.is_constant()) return true;  // null-touching tuple
                tuple.push_back(img.name());
            }
            result.insert(std::move(tuple));
            return true;
        });
    return result;
}

}  // namespace chasekit
