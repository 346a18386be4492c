#include "chasekit/term.hpp"

#include <ostream>
#include <utility>

namespace chasekit {

Term::Term(Kind kind, std::string name, std::string branch, std::uint64_t id)
    : kind_(kind), name_(std::move(name)), branch_(std::move(branch)), id_(id) {
    if (kind_ == Kind::Null) {
        text_ = "_:b" + branch_ + "_" + std::to_string(id_);
    } else {
        text_ = name_;
    }
}

Term Term::constant(std::string name) {
    return Term(Kind::Constant, std::move(name), {}, 0);
}

Term Term::null(std::string branch_tag, std::uint64_t id) {
    return Term(Kind::Null, {}, std::move(branch_tag), id);
}

Term Term::variable(std::string name) {
    return Term(Kind::Variable, std::move(name), {}, 0);
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
    return os << t.text();
}

}  // namespace chasekit
