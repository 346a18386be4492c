#include "chasekit/printer.hpp"

#include <sstream>

namespace chasekit {

namespace {

void put_atom(std::ostringstream& os, const Atom& a) {
    os << a.predicate << "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ", ";
        os << a.args[i].text();
    }
    os << ")";
}

void put_conjunction(std::ostringstream& os, const std::vector<Atom>& atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << ", ";
        put_atom(os, atoms[i]);
    }
}

}  // namespace

std::string to_text(const Atom& a) {
    std::ostringstream os;
    put_atom(os, a);
    return os.str();
}

std::string to_text(const std::vector<Atom>& conjunction) {
    std::ostringstream os;
    put_conjunction(os, conjunction);
    return os.str();
}

std::string to_text(const Dependency& d) {
    std::ostringstream os;
    put_conjunction(os, body_of(d));
    os << " -> ";
    if (const Dtgd* tgd = std::get_if<Dtgd>(&d)) {
        for (std::size_t i = 0; i < tgd->disjuncts.size(); ++i) {
            if (i) os << " | ";
            const Disjunct& disjunct = tgd->disjuncts[i];
            if (!disjunct.existentials.empty()) {
                os << "exists ";
                for (std::size_t j = 0; j < disjunct.existentials.size(); ++j) {
                    if (j) os << ", ";
                    os << disjunct.existentials[j].text();
                }
                os << " ";
            }
            put_conjunction(os, disjunct.head);
        }
    } else if (const Egd* egd = std::get_if<Egd>(&d)) {
        os << egd->left.text() << " = " << egd->right.text();
    } else {
        os << "false";
    }
    return os.str();
}

std::string to_text(const ConjunctiveQuery& q) {
    std::ostringstream os;
    os << q.name << "(";
    for (std::size_t i = 0; i < q.answer_terms.size(); ++i) {
        if (i) os << ", ";
        os << q.answer_terms[i].text();
    }
    os << ") :- ";
    put_conjunction(os, q.body);
    bool first = q.body.empty();
    for (const auto& [lhs, rhs] : q.equalities) {
        if (!first) os << ", ";
        os << lhs.text() << " = " << rhs.text();
        first = false;
    }
    return os.str();
}

std::string serialize_program(const Program& p) {
    std::ostringstream os;
    for (const Atom& fact : p.facts) {
        os << to_text(fact) << ".\n";
    }
    for (const Dependency& d : p.dependencies) {
        os << to_text(d) << ".\n";
    }
    for (const ConjunctiveQuery& q : p.queries) {
        os << to_text(q) << ".\n";
    }
    return os.str();
}

std::string print_instance(const Instance& instance) {
    std::ostringstream os;
    for (const Atom& a : instance) {
        os << to_text(a) << ".\n";
    }
    return os.str();
}

}  // namespace chasekit
