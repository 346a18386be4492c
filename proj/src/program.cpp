#include "chasekit/program.hpp"

#include <variant>

namespace chasekit {

namespace {

std::optional<std::string> declare_atoms(Schema& schema,
                                         const std::vector<Atom>& atoms) {
    for (const Atom& a : atoms) {
        if (!schema.declare(a.predicate, a.arity())) {
            return "predicate " + a.predicate + " used with arity " +
                   std::to_string(a.arity()) + " but declared with arity " +
                   std::to_string(*schema.arity_of(a.predicate));
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_program(const Program& p) {
    Schema schema;
    for (const Atom& fact : p.facts) {
        for (const Term& t : fact.args) {
            if (!t.is_constant()) {
                return "facts must contain constants only: " + fact.predicate;
            }
        }
        if (auto err = declare_atoms(schema, {fact})) return err;
    }
    for (std::size_t i = 0; i < p.dependencies.size(); ++i) {
        const Dependency& dep = p.dependencies[i];
        if (auto err = validate_dependency(dep)) {
            return dependency_label(i) + ": " + *err;
        }
        if (auto err = declare_atoms(schema, body_of(dep))) return err;
        if (const Dtgd* tgd = std::get_if<Dtgd>(&dep)) {
            for (const Disjunct& disjunct : tgd->disjuncts) {
                if (auto err = declare_atoms(schema, disjunct.head)) return err;
            }
        }
    }
    for (const ConjunctiveQuery& q : p.queries) {
        if (auto err = declare_atoms(schema, q.body)) return err;
        std::optional<ConjunctiveQuery> normalized = normalize_query(q);
        if (!normalized) continue;  // unsatisfiable queries are legal, just false
        const std::set<std::string> body_vars = variables_of(normalized->body);
        for (const Term& t : normalized->answer_terms) {
            if (t.is_variable() && !body_vars.count(t.name())) {
                return "query " + q.name + ": answer variable " + t.name() +
                       " is not bound by the body";
            }
        }
    }
    return std::nullopt;
}

}  // namespace chasekit
