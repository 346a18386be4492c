#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/atom.hpp"

namespace chasekit {

/// A finite mapping from variables to terms plus a mapping from labelled
/// nulls to constants or other nulls. Substitutions double as homomorphisms
/// when every image is ground.
class Substitution {
public:
    using NullKey = std::pair<std::string, std::uint64_t>;  // (branch_tag, id)

    void bind(const std::string& var, Term value);
    void unbind(const std::string& var);
    void bind_null(const Term& null, Term value);

    bool binds(const std::string& var) const;
    /// Image of a bound variable, or nullptr.
    const Term* var_image(const std::string& var) const;
    /// Image of a mapped null, or nullptr.
    const Term* null_image(const Term& null) const;

    /// Image of an arbitrary term; unmapped terms map to themselves.
    Term image(const Term& t) const;

    bool empty() const { return vars_.empty() && nulls_.empty(); }
    const std::map<std::string, Term>& var_bindings() const { return vars_; }
    const std::map<NullKey, Term>& null_bindings() const { return nulls_; }

    /// "{X->a, Y->_:b0_1}" with bindings in sorted order.
    std::string text() const;

    bool operator==(const Substitution&) const = default;
    auto operator<=>(const Substitution&) const = default;

private:
    std::map<std::string, Term> vars_;
    std::map<NullKey, Term> nulls_;
};

/// Thrown by apply_substitution in strict mode when a variable of the
/// conjunction has no binding.
struct StrictModeUnbound : std::runtime_error {
    explicit StrictModeUnbound(const std::string& var)
        : std::runtime_error("unbound variable in strict substitution: " + var) {}
};

enum class Strictness { Lenient, Strict };

Term apply_substitution(const Substitution& s, const Term& t,
                        Strictness strictness = Strictness::Lenient);
Atom apply_substitution(const Substitution& s, const Atom& a,
                        Strictness strictness = Strictness::Lenient);
std::vector<Atom> apply_substitution(const Substitution& s,
                                     const std::vector<Atom>& conjunction,
                                     Strictness strictness = Strictness::Lenient);

std::ostream& operator<<(std::ostream& os, const Substitution& s);

}  // namespace chasekit
