#include "chasekit/substitution.hpp"

#include <ostream>
#include <sstream>

namespace chasekit {

void Substitution::bind(const std::string& var, Term value) {
    vars_.insert_or_assign(var, std::move(value));
}

void Substitution::unbind(const std::string& var) { vars_.erase(var); }

void Substitution::bind_null(const Term& null, Term value) {
    nulls_.insert_or_assign({null.branch_tag(), null.null_id()},
                            std::move(value));
}

bool Substitution::binds(const std::string& var) const {
    return vars_.count(var) > 0;
}

const Term* Substitution::var_image(const std::string& var) const {
    auto it = vars_.find(var);
    return it == vars_.end() ? nullptr : &it->second;
}

const Term* Substitution::null_image(const Term& null) const {
    auto it = nulls_.find({null.branch_tag(), null.null_id()});
    return it == nulls_.end() ? nullptr : &it->second;
}

Term Substitution::image(const Term& t) const {
    if (t.is_variable()) {
        if (const Term* img = var_image(t.name())) return *img;
    } else if (t.is_null()) {
        if (const Term* img = null_image(t)) return *img;
    }
    return t;
}

std::string Substitution::text() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [var, value] : vars_) {
        if (!first) os << ", ";
        os << var << "->" << value.text();
        first = false;
    }
    for (const auto& [key, value] : nulls_) {
        if (!first) os << ", ";
        os << Term::null(key.first, key.second).text() << "->" << value.text();
        first = false;
    }
    os << "}";
    return os.str();
}

Term apply_substitution(const Substitution& s, const Term& t,
                        Strictness strictness) {
    if (t.is_variable() && strictness == Strictness::Strict &&
        !s.binds(t.name())) {
        throw StrictModeUnbound(t.name());
    }
    return s.image(t);
}

Atom apply_substitution(const Substitution& s, const Atom& a,
                        Strictness strictness) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) {
        out.args.push_back(apply_substitution(s, t, strictness));
    }
    return out;
}

std::vector<Atom> apply_substitution(const Substitution& s,
                                     const std::vector<Atom>& conjunction,
                                     Strictness strictness) {
    std::vector<Atom> out;
    out.reserve(conjunction.size());
    for (const Atom& a : conjunction) {
        out.push_back(apply_substitution(s, a, strictness));
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Substitution& s) {
    return os << s.text();
}

}  // namespace chasekit
