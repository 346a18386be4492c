#include "chasekit/atom.hpp"

#include <algorithm>
#include <ostream>

namespace chasekit {

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(),
                       [](const Term& t) { return t.is_ground(); });
}

bool Atom::mentions(const Term& t) const {
    return std::find(args.begin(), args.end(), t) != args.end();
}

std::string Position::text() const {
    return predicate + "[" + std::to_string(index) + "]";
}

std::set<std::string> variables_of(const Atom& atom) {
    std::set<std::string> vars;
    for (const Term& t : atom.args) {
        if (t.is_variable()) vars.insert(t.name());
    }
    return vars;
}

std::set<std::string> variables_of(const std::vector<Atom>& conjunction) {
    std::set<std::string> vars;
    for (const Atom& a : conjunction) {
        for (const Term& t : a.args) {
            if (t.is_variable()) vars.insert(t.name());
        }
    }
    return vars;
}

std::ostream& operator<<(std::ostream& os, const Atom& a) {
    os << a.predicate << "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) os << ", ";
        os << a.args[i];
    }
    return os << ")";
}

}  // namespace chasekit
