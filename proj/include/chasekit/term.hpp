#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace chasekit {

/// A first-order term: a constant, a labelled null, or a variable.
///
/// Constants and variables are identified by name, labelled nulls by a
/// (branch_tag, id) pair that is unique within one chase run. Ordering is
/// lexicographic on the rendered text with the kind as tie-break, so every
/// sorted container iterates in a stable, human-predictable order.
class Term {
public:
    enum class Kind { Constant, Null, Variable };

    static Term constant(std::string name);
    static Term null(std::string branch_tag, std::uint64_t id);
    static Term variable(std::string name);

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    bool is_null() const { return kind_ == Kind::Null; }
    bool is_variable() const { return kind_ == Kind::Variable; }
    bool is_ground() const { return kind_ != Kind::Variable; }

    /// Name of a constant or variable; empty for nulls.
    const std::string& name() const { return name_; }
    /// Branch tag of a null; empty for constants and variables.
    const std::string& branch_tag() const { return branch_; }
    std::uint64_t null_id() const { return id_; }

    /// Canonical rendering: constants and variables print their name,
    /// nulls print as "_:b<branch>_<id>".
    const std::string& text() const { return text_; }

    bool operator==(const Term& other) const {
        return kind_ == other.kind_ && text_ == other.text_;
    }
    std::strong_ordering operator<=>(const Term& other) const {
        if (auto c = text_ <=> other.text_; c != 0) return c;
        return kind_ <=> other.kind_;
    }

private:
    Term(Kind kind, std::string name, std::string branch, std::uint64_t id);

    Kind kind_;
    std::string name_;
    std::string branch_;
    std::uint64_t id_ = 0;
    std::string text_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

}  // namespace chasekit
