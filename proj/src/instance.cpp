#include "chasekit/instance.hpp"

#include <ostream>
#include <stdexcept>
#include <vector>

namespace chasekit {

Instance::Instance(std::initializer_list<Atom> atoms) {
    for (const Atom& a : atoms) insert(a);
}

bool Instance::insert(Atom atom) {
    if (!atom.is_ground()) {
        throw std::invalid_argument("instance atoms must be variable-free: " +
                                    atom.predicate);
    }
    return atoms_.insert(std::move(atom)).second;
}

std::pair<Instance::const_iterator, Instance::const_iterator>
Instance::with_predicate(const std::string& predicate) const {
    auto first = atoms_.lower_bound(Atom{predicate, {}});
    auto last = first;
    while (last != atoms_.end() && last->predicate == predicate) ++last;
    return {first, last};
}

std::set<Term> Instance::active_domain() const {
    std::set<Term> dom;
    for (const Atom& a : atoms_) {
        dom.insert(a.args.begin(), a.args.end());
    }
    return dom;
}

void Instance::replace_term(const Term& from, const Term& to) {
    std::vector<Atom> touched;
    for (auto it = atoms_.begin(); it != atoms_.end();) {
        if (it->mentions(from)) {
            touched.push_back(*it);
            it = atoms_.erase(it);
        } else {
            ++it;
        }
    }
    for (Atom& a : touched) {
        for (Term& t : a.args) {
            if (t == from) t = to;
        }
        atoms_.insert(std::move(a));
    }
}

std::ostream& operator<<(std::ostream& os, const Instance& instance) {
    os << "{";
    bool first = true;
    for (const Atom& a : instance) {
        if (!first) os << ", ";
        os << a;
        first = false;
    }
    return os << "}";
}

}  // namespace chasekit
