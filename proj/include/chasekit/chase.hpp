#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chasekit/dependency.hpp"
#include "chasekit/homomorphism.hpp"
#include "chasekit/instance.hpp"

namespace chasekit {

/// Issues fresh labelled nulls with strictly increasing ids. The branch tag
/// keeps nulls from different chase branches distinct without coordination.
class NullSource {
public:
    explicit NullSource(std::string branch_tag = "0", std::uint64_t next_id = 0)
        : branch_(std::move(branch_tag)), next_(next_id) {}

    Term fresh() { return Term::null(branch_, next_++); }
    const std::string& branch_tag() const { return branch_; }
    std::uint64_t next_id() const { return next_; }

private:
    std::string branch_;
    std::uint64_t next_;
};

/// max_steps bounds TGD applications, max_depth bounds levels; an unset
/// bound is disabled.
struct ChaseBudget {
    std::optional<std::uint64_t> max_steps;
    std::optional<std::uint32_t> max_depth;

    static ChaseBudget unlimited() { return {}; }
    static ChaseBudget of(std::uint64_t steps, std::uint32_t depth) {
        return {steps, depth};
    }
};

/// Two deterministic application orders; Reversed walks the dependency list
/// and each level's homomorphism batch back to front.
enum class ApplicationOrder { Canonical, Reversed };

struct TraceEvent {
    enum class Kind { TgdStep, EgdMerge, Failure };

    Kind kind = Kind::TgdStep;
    std::uint64_t step = 0;
    std::string rule_label;
    Substitution hom;
    std::vector<Atom> added;   // TgdStep
    std::string replaced;      // EgdMerge: "<old> -> <new>"
    std::string detail;        // Failure

    /// "step 3: r1 with {X->a} added {person(a, _:b0_0)}"
    std::string line() const;
};

struct ChaseSuccess {
    Instance result;
    std::uint64_t steps = 0;
};

struct ChaseFailure {
    std::uint64_t steps = 0;
    std::string rule_label;
    std::string detail;
};

struct ChaseBudgetExhausted {
    Instance partial;
    std::uint64_t steps = 0;
};

struct ChaseOutcome {
    std::variant<ChaseSuccess, ChaseFailure, ChaseBudgetExhausted> value;

    bool success() const { return std::holds_alternative<ChaseSuccess>(value); }
    bool failure() const { return std::holds_alternative<ChaseFailure>(value); }
    bool budget_exhausted() const {
        return std::holds_alternative<ChaseBudgetExhausted>(value);
    }
    /// Final or partial instance; nullptr on failure.
    const Instance* instance() const;
    std::uint64_t steps() const;
};

/// True when some extension of h maps one of the rule's head disjuncts into
/// the instance.
bool head_satisfiable(const Dtgd& rule, const Substitution& h,
                      const Instance& instance);

/// Extends h with fresh nulls for the disjunct's existentials and inserts
/// the ground head atoms; newly inserted atoms are appended to *added.
void fire_disjunct(const Disjunct& disjunct, const Substitution& h,
                   Instance& instance, NullSource& nulls,
                   std::vector<Atom>* added = nullptr);

/// Applies EGDs to fixpoint in place (the lower-id null survives a
/// null-null merge). Returns the hard failure when an equality hits two
/// distinct constants.
std::optional<ChaseFailure> egd_fixpoint(Instance& instance,
                                         const std::vector<Dependency>& sigma,
                                         ApplicationOrder order,
                                         std::uint64_t steps = 0,
                                         std::vector<TraceEvent>* trace = nullptr);

/// First matched negative constraint, if any.
std::optional<ChaseFailure> violated_constraint(
    const Instance& instance, const std::vector<Dependency>& sigma,
    ApplicationOrder order, std::uint64_t steps = 0,
    std::vector<TraceEvent>* trace = nullptr);

/// First homomorphism (canonical order) embedding the body such that no
/// extension maps the head into the instance — the restricted-chase
/// applicability condition. Requires a single-disjunct rule.
std::optional<Substitution> tgd_applicable(const Dependency& tgd,
                                           const Instance& instance);

/// All applicable homomorphisms of one rule against one instance, in
/// canonical order. Works for disjunctive rules too (no disjunct may be
/// satisfiable).
std::vector<Substitution> applicable_homomorphisms(const Dependency& dtgd,
                                                   const Instance& instance);

/// instance ∪ h'(head), where h' extends h with fresh nulls for the
/// existentials of the single disjunct.
Instance apply_tgd(const Dependency& tgd, const Substitution& h,
                   const Instance& instance, NullSource& nulls);

/// Equates h(left) and h(right): replaces a null by the other side (the
/// null with the lower id survives a null-null merge), or returns nullopt
/// when both sides are distinct constants (hard failure).
std::optional<Instance> apply_egd(const Egd& egd, const Substitution& h,
                                  const Instance& instance);

/// True when no dependency of sigma is applicable: every rule's body match
/// has a satisfiable head, no EGD violation, no constraint match.
bool satisfies_all(const Instance& instance,
                   const std::vector<Dependency>& sigma);

/// Level-saturating fair chase: per round, EGDs run to fixpoint, negative
/// constraints are checked, then every TGD homomorphism applicable at the
/// round's start is applied once. Terminates with Success when no TGD is
/// applicable, Failure on an EGD hard failure or constraint match, and
/// BudgetExhausted when a bound is hit. Only single-disjunct rules are
/// accepted.
ChaseOutcome chase(const Instance& db, const std::vector<Dependency>& sigma,
                   const ChaseBudget& budget,
                   ApplicationOrder order = ApplicationOrder::Canonical,
                   std::vector<TraceEvent>* trace = nullptr,
                   NullSource nulls = NullSource());

}  // namespace chasekit
