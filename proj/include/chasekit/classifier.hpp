#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/dependency.hpp"

namespace chasekit {

struct NotATgdError : std::logic_error {
    NotATgdError()
        : std::logic_error("operation requires a single-disjunct TGD") {}
};

/// One (body, disjunct) pair of a DTGD, treated as a TGD of its own. The
/// set-level fragment checks run over these views, which is the
/// disjunct-wise lifting used for disjunctive rules throughout.
struct TgdView {
    std::size_t dep_index = 0;
    std::size_t disjunct_index = 0;
    std::vector<Atom> body;
    Disjunct disjunct;

    std::string label(bool multi) const;  // "r3" or "r3/2"
};

/// Views of every DTGD in sigma; EGDs and negative constraints contribute
/// nothing (the fragments are TGD-set notions).
std::vector<TgdView> tgd_views(const std::vector<Dependency>& sigma);

// ---- per-dependency checks (single-disjunct TGDs; throw NotATgdError) ----

/// Single body atom, single head atom, no variable repeated within either.
bool is_inclusion_dependency(const Dependency& d);

/// Exactly one body atom; repetitions allowed.
bool is_linear(const Dependency& d);

/// Leftmost body atom containing every body variable, or nullopt.
std::optional<Atom> guard_of(const Dependency& d);

// ---- set-level checks ----

/// Positions where a labelled null can appear during the chase: least
/// fixpoint of (base) existential head positions and (step) head positions
/// of body variables that occur only at affected positions.
std::set<Position> affected_positions(const std::vector<Dependency>& sigma);

/// Every rule has a body atom covering all of its body variables that occur
/// only at affected positions.
bool is_weakly_guarded(const std::vector<Dependency>& sigma);

struct DependencyGraph {
    enum class EdgeKind { Normal, Special };
    struct Edge {
        Position from;
        Position to;
        EdgeKind kind = EdgeKind::Normal;

        bool operator==(const Edge&) const = default;
        auto operator<=>(const Edge&) const = default;
    };

    std::set<Position> vertices;
    std::set<Edge> edges;
};

/// Vertices are all positions of predicates occurring in the DTGDs of
/// sigma. Per view: a normal edge from each body position of a universal
/// variable to each of its head positions, and a special edge from every
/// body position holding a universal variable to every head position
/// occupied by an existential variable.
DependencyGraph dependency_graph(const std::vector<Dependency>& sigma);

/// A cycle through at least one special edge, as a closed position
/// sequence (first == last), or nullopt if none exists.
std::optional<std::vector<Position>> find_special_cycle(const DependencyGraph& g);

bool is_weakly_acyclic(const std::vector<Dependency>& sigma);

/// Variable marking computed by the two-step fixpoint: (initial) body
/// variables missing from some head atom get all body occurrences marked;
/// (propagation) a head variable of one rule whose head positions are all
/// covered, within a single body atom of another rule, by marked variables
/// gets marked too. Indices refer to (dependency, disjunct) views.
struct Marking {
    struct Occurrence {
        std::size_t dep = 0;
        std::size_t disjunct = 0;
        std::size_t atom = 0;
        std::size_t arg = 0;

        bool operator==(const Occurrence&) const = default;
        auto operator<=>(const Occurrence&) const = default;
    };

    std::set<Occurrence> occurrences;
    // (dep index, disjunct index, variable)
    std::set<std::tuple<std::size_t, std::size_t, std::string>> variables;

    bool operator==(const Marking&) const = default;
};

Marking smarking(const std::vector<Dependency>& sigma);

/// One full propagation pass; returns true when it changed the marking.
/// smarking() output is a fixpoint, so a further pass returns false.
bool smarking_propagation_pass(const std::vector<Dependency>& sigma, Marking& m);

struct StickinessViolation {
    std::size_t dep_index = 0;
    std::string variable;
};

std::optional<StickinessViolation> sticky_violation(
    const std::vector<Dependency>& sigma);

/// No rule of the marked set has a marked variable occurring more than once
/// in its body.
bool is_sticky(const std::vector<Dependency>& sigma);

/// Aggregated verdicts with machine-checkable witnesses.
struct FragmentReport {
    bool id = false;
    bool linear = false;
    bool guarded = false;
    bool weakly_guarded = false;
    bool weakly_acyclic = false;
    bool sticky = false;

    std::size_t tgd_count = 0;
    std::size_t egd_count = 0;
    std::size_t constraint_count = 0;

    std::vector<std::string> view_labels;              // per TGD view
    std::vector<std::optional<Atom>> guards;           // per TGD view
    std::vector<std::string> weak_guard_labels;        // per DTGD
    std::vector<std::optional<Atom>> weak_guards;      // per DTGD
    std::set<Position> affected;
    std::optional<std::vector<Position>> special_cycle;
    std::vector<std::pair<std::string, std::string>> marked;  // (rule, var)
    std::optional<std::pair<std::string, std::string>> violation;
    std::vector<std::string> warnings;

    std::string to_json() const;  // stable key order
    std::string to_text() const;
};

FragmentReport classify(const std::vector<Dependency>& sigma);

}  // namespace chasekit
