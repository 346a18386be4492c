#pragma once

#include <string>

#include "chasekit/dependency.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/program.hpp"
#include "chasekit/query.hpp"

namespace chasekit {

// Canonical textual forms. serialize_program is bit-exact: single space
// after commas, one statement per line, LF line endings, facts first in
// canonical order, then dependencies and queries in program order.

std::string to_text(const Atom& a);
std::string to_text(const std::vector<Atom>& conjunction);
std::string to_text(const Dependency& d);
std::string to_text(const ConjunctiveQuery& q);

std::string serialize_program(const Program& p);

/// Every atom as a fact statement, one per line, canonical order. Nulls
/// print as "_:b<branch>_<id>"; output containing nulls is for reading
/// back by humans, not by the parser.
std::string print_instance(const Instance& instance);

}  // namespace chasekit
