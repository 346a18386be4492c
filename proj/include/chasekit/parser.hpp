#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chasekit/program.hpp"

namespace chasekit {

struct SourcePos {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
};

struct ParseError {
    enum class Kind { Syntax, ArityMismatch, UnsafeRule, Validation };

    Kind kind = Kind::Syntax;
    SourcePos pos;
    std::string message;
    std::vector<std::string> expected;  // token descriptions, syntax errors only

    std::string to_string() const;
};

class ParseResult {
public:
    explicit ParseResult(Program p) : value_(std::move(p)) {}
    explicit ParseResult(ParseError e) : value_(std::move(e)) {}

    bool ok() const { return std::holds_alternative<Program>(value_); }
    const Program& program() const { return std::get<Program>(value_); }
    const ParseError& error() const { return std::get<ParseError>(value_); }

private:
    std::variant<Program, ParseError> value_;
};

/// Parses the rule language:
///
///   % comment to end of line
///   student(s1, c1).                                  facts (constants only)
///   student(X, Y) -> exists Z person(X, Z).           TGDs
///   parent(X, Y) -> male(Y) | female(Y).              disjunctive TGDs
///   r(X, Y), r(X, Z) -> Y = Z.                        EGDs
///   male(X), female(X) -> false.                      negative constraints
///   q(X) :- person(X), X = a.                         named queries
///
/// Identifiers starting with an uppercase letter are variables, all others
/// are constants; universal quantifiers are implicit. Labelled nulls cannot
/// be written in source programs.
ParseResult parse_program(std::string_view text);

}  // namespace chasekit
