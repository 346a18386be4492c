#include "chasekit/dependency.hpp"

#include <algorithm>
#include <ostream>

#include "chasekit/printer.hpp"

namespace chasekit {

const std::vector<Atom>& body_of(const Dependency& d) {
    return std::visit([](const auto& dep) -> const std::vector<Atom>& {
        return dep.body;
    }, d);
}

bool is_dtgd(const Dependency& d) {
    return std::holds_alternative<Dtgd>(d);
}

bool is_single_disjunct_tgd(const Dependency& d) {
    const Dtgd* tgd = std::get_if<Dtgd>(&d);
    return tgd != nullptr && tgd->is_tgd();
}

std::string dependency_label(std::size_t index) {
    return "r" + std::to_string(index + 1);
}

namespace {

std::optional<std::string> validate_dtgd(const Dtgd& d) {
    if (d.body.empty()) return "rule body must not be empty";
    if (d.disjuncts.empty()) return "rule head must not be empty";
    const std::set<std::string> body_vars = variables_of(d.body);
    for (const Disjunct& disjunct : d.disjuncts) {
        if (disjunct.head.empty()) return "head disjunct must not be empty";
        std::set<std::string> existentials;
        for (const Term& e : disjunct.existentials) {
            if (!e.is_variable()) return "existentials must be variables";
            if (!existentials.insert(e.name()).second) {
                return "duplicate existential variable " + e.name();
            }
            if (body_vars.count(e.name())) {
                return "existential variable " + e.name() +
                       " shadows a body variable";
            }
        }
        const std::set<std::string> head_vars = variables_of(disjunct.head);
        for (const std::string& v : head_vars) {
            if (!body_vars.count(v) && !existentials.count(v)) {
                return "unsafe rule: head variable " + v +
                       " neither occurs in the body nor is existential";
            }
        }
        for (const std::string& e : existentials) {
            if (!head_vars.count(e)) {
                return "existential variable " + e +
                       " does not occur in its head disjunct";
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> validate_egd(const Egd& e) {
    if (e.body.empty()) return "rule body must not be empty";
    if (!e.left.is_variable() || !e.right.is_variable()) {
        return "both sides of an equality head must be variables";
    }
    const std::set<std::string> body_vars = variables_of(e.body);
    for (const Term* side : {&e.left, &e.right}) {
        if (!body_vars.count(side->name())) {
            return "unsafe rule: equated variable " + side->name() +
                   " does not occur in the body";
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::string> validate_dependency(const Dependency& d) {
    if (const Dtgd* tgd = std::get_if<Dtgd>(&d)) return validate_dtgd(*tgd);
    if (const Egd* egd = std::get_if<Egd>(&d)) return validate_egd(*egd);
    const NegConstraint& nc = std::get<NegConstraint>(d);
    if (nc.body.empty()) return "rule body must not be empty";
    return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const Dependency& d) {
    return os << to_text(d);
}

}  // namespace chasekit
