#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chasekit/chase.hpp"
#include "chasekit/query.hpp"

namespace chasekit {

/// The branching chase for disjunctive rules. Each inner node records the
/// rule and homomorphism of one chase step; its children are the per-
/// disjunct results. Leaves are Saturated (no rule applicable), Failed
/// (EGD hard failure or constraint match), or Open (budget cut). Nulls
/// invented in sibling branches carry distinct branch tags.
struct ChaseTree {
    enum class Status { Inner, Saturated, Failed, Open };

    struct Node {
        Instance instance;
        Status status = Status::Open;
        std::string rule_label;   // inner nodes: rule applied here
        std::optional<Substitution> hom;
        std::string fail_label;   // failed leaves: violated rule
        std::size_t parent = 0;
        int disjunct_index = 0;   // 1-based among siblings; 0 for the root
        std::vector<std::size_t> children;
    };

    std::deque<Node> nodes;  // nodes[0] is the root (the database)
    std::uint64_t steps = 0;
    // Constants occurring in the dependency set; part of the active domain
    // reported when every branch fails.
    std::set<std::string> theory_constants;

    /// Leaf ids in depth-first order (deterministic across schedulers).
    std::vector<std::size_t> leaves() const;
    bool fully_expanded() const;  // no Open leaves
    bool all_failed() const;      // nonempty leaf set, every leaf Failed
};

/// First canonical homomorphism embedding the body such that no disjunct's
/// head can be mapped into the instance by any extension.
std::optional<Substitution> dtgd_applicable(const Dependency& dtgd,
                                            const Instance& instance);

struct DtgdChildren {
    std::vector<Instance> instances;
    std::vector<NullSource> sources;  // per child; forked tags when branching
};

/// One child per disjunct: instance ∪ h'(head_k) with fresh nulls. A
/// single-disjunct rule continues the given null source; a branching rule
/// forks it into per-child sources tagged "<tag>.<k>".
DtgdChildren apply_dtgd(const Dependency& dtgd, const Substitution& h,
                        const Instance& instance, const NullSource& nulls);

/// Breadth-first fair expansion. The step budget is global across the
/// tree, the depth budget is per branch. threads > 1 expands independent
/// branches concurrently; the tree shape is scheduler-independent, but
/// when a budget bound is hit the set of Open leaves may differ between
/// runs, so deterministic output needs threads == 1.
ChaseTree disjunctive_chase(const Instance& db,
                            const std::vector<Dependency>& sigma,
                            const ChaseBudget& budget,
                            ApplicationOrder order = ApplicationOrder::Canonical,
                            unsigned threads = 1);

enum class Certainty { Entailed, NotEntailed, Unknown };

/// Entailed when every non-Failed leaf (Open included) satisfies q, or when
/// every leaf failed (an unsatisfiable theory entails everything).
/// NotEntailed only from a fully expanded tree; Unknown when an Open leaf
/// does not satisfy q.
Certainty certain_bcq(const ConjunctiveQuery& q, const ChaseTree& tree);
Certainty certain_bcq(const ConjunctiveQuery& q, const Instance& db,
                      const std::vector<Dependency>& sigma,
                      const ChaseBudget& budget);

enum class AnswerStatus { Exact, LowerBoundUnknown };

struct CertainAnswers {
    std::set<std::vector<std::string>> tuples;
    AnswerStatus status = AnswerStatus::Exact;
    /// Every branch failed: the theory has no model and every tuple over
    /// the active domain is reported.
    bool unsatisfiable = false;
};

/// Intersection of answers(q, leaf) over the non-Failed leaves. Exact only
/// when the tree is fully expanded; with Open leaves the intersection is
/// reported as LowerBoundUnknown. Requires arity >= 1.
CertainAnswers certain_answers(const ConjunctiveQuery& q, const ChaseTree& tree);
CertainAnswers certain_answers(const ConjunctiveQuery& q, const Instance& db,
                               const std::vector<Dependency>& sigma,
                               const ChaseBudget& budget);

/// Indented per-node text, depth-first; with_instances appends leaf atoms.
std::string export_tree_text(const ChaseTree& tree, bool with_instances = false);
/// Nested structure: path, status, rule, substitution, children, leaf
/// instances in fact syntax.
std::string export_tree_json(const ChaseTree& tree);

}  // namespace chasekit
