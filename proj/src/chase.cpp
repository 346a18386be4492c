#include "chasekit/chase.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "chasekit/printer.hpp"

namespace chasekit {

std::string TraceEvent::line() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::TgdStep:
            os << "step " << step << ": " << rule_label << " with "
               << hom.text() << " added {";
            for (std::size_t i = 0; i < added.size(); ++i) {
                if (i) os << ", ";
                os << to_text(added[i]);
            }
            os << "}";
            break;
        case Kind::EgdMerge:
            os << "egd " << rule_label << " with " << hom.text()
               << " replaced " << replaced;
            break;
        case Kind::Failure:
            os << "failure: " << rule_label << " with " << hom.text();
            if (!detail.empty()) os << " (" << detail << ")";
            break;
    }
    return os.str();
}

const Instance* ChaseOutcome::instance() const {
    if (const ChaseSuccess* s = std::get_if<ChaseSuccess>(&value)) {
        return &s->result;
    }
    if (const ChaseBudgetExhausted* b =
            std::get_if<ChaseBudgetExhausted>(&value)) {
        return &b->partial;
    }
    return nullptr;
}

std::uint64_t ChaseOutcome::steps() const {
    return std::visit([](const auto& v) { return v.steps; }, value);
}

namespace {

bool disjunct_satisfiable(const Disjunct& disjunct, const Substitution& h,
                          const Instance& instance) {
    // The enumeration is cut short exactly when an extension exists.
    return !for_each_homomorphism(disjunct.head, instance, h,
                                  [](const Substitution&) { return false; });
}

const Dtgd& require_rule(const Dependency& d, bool single) {
    const Dtgd* tgd = std::get_if<Dtgd>(&d);
    if (!tgd || (single && !tgd->is_tgd())) {
        throw std::invalid_argument(
            "operation requires a tuple-generating dependency" +
            std::string(single ? " with a single disjunct" : ""));
    }
    return *tgd;
}

// Null-null merges keep the null with the lower id; ties go to the smaller
// branch tag.
bool null_outlives(const Term& a, const Term& b) {
    if (a.null_id() != b.null_id()) return a.null_id() < b.null_id();
    return a.branch_tag() < b.branch_tag();
}

struct EgdViolation {
    std::size_t index;
    Substitution hom;
    Term left;
    Term right;
};

std::optional<EgdViolation> first_egd_violation(
    const Instance& instance, const std::vector<Dependency>& sigma,
    const std::vector<std::size_t>& order) {
    for (std::size_t i : order) {
        const Egd* egd = std::get_if<Egd>(&sigma[i]);
        if (!egd) continue;
        std::optional<EgdViolation> found;
        for_each_homomorphism(egd->body, instance, {},
                              [&](const Substitution& h) {
                                  Term l = h.image(egd->left);
                                  Term r = h.image(egd->right);
                                  if (l == r) return true;
                                  found = EgdViolation{i, h, l, r};
                                  return false;
                              });
        if (found) return found;
    }
    return std::nullopt;
}

std::vector<std::size_t> index_order(std::size_t n, ApplicationOrder order) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    if (order == ApplicationOrder::Reversed) {
        std::reverse(idx.begin(), idx.end());
    }
    return idx;
}

}  // namespace

bool head_satisfiable(const Dtgd& rule, const Substitution& h,
                      const Instance& instance) {
    return std::any_of(rule.disjuncts.begin(), rule.disjuncts.end(),
                       [&](const Disjunct& d) {
                           return disjunct_satisfiable(d, h, instance);
                       });
}

void fire_disjunct(const Disjunct& disjunct, const Substitution& h,
                   Instance& instance, NullSource& nulls,
                   std::vector<Atom>* added) {
    Substitution extended = h;
    for (const Term& e : disjunct.existentials) {
        extended.bind(e.name(), nulls.fresh());
    }
    for (const Atom& a : disjunct.head) {
        Atom ground = apply_substitution(extended, a, Strictness::Strict);
        if (instance.insert(ground) && added) added->push_back(ground);
    }
}

std::optional<ChaseFailure> egd_fixpoint(Instance& instance,
                                         const std::vector<Dependency>& sigma,
                                         ApplicationOrder order,
                                         std::uint64_t steps,
                                         std::vector<TraceEvent>* trace) {
    const std::vector<std::size_t> idx = index_order(sigma.size(), order);
    while (auto violation = first_egd_violation(instance, sigma, idx)) {
        const std::string label = dependency_label(violation->index);
        const Term& l = violation->left;
        const Term& r = violation->right;
        if (!l.is_null() && !r.is_null()) {
            const std::string what =
                "equality forces distinct constants " + l.text() + " and " +
                r.text();
            if (trace) {
                trace->push_back({TraceEvent::Kind::Failure, steps, label,
                                  violation->hom, {}, {}, what});
            }
            return ChaseFailure{steps, label, what};
        }
        Term gone = l, kept = r;
        if (l.is_null() && r.is_null()) {
            if (null_outlives(l, r)) std::swap(gone, kept);
        } else if (r.is_null()) {
            std::swap(gone, kept);
        }
        instance.replace_term(gone, kept);
        if (trace) {
            trace->push_back({TraceEvent::Kind::EgdMerge, steps, label,
                              violation->hom, {},
                              gone.text() + " -> " + kept.text(), {}});
        }
    }
    return std::nullopt;
}

std::optional<ChaseFailure> violated_constraint(
    const Instance& instance, const std::vector<Dependency>& sigma,
    ApplicationOrder order, std::uint64_t steps,
    std::vector<TraceEvent>* trace) {
    for (std::size_t i : index_order(sigma.size(), order)) {
        const NegConstraint* nc = std::get_if<NegConstraint>(&sigma[i]);
        if (!nc) continue;
        std::optional<Substitution> match;
        for_each_homomorphism(nc->body, instance, {},
                              [&match](const Substitution& h) {
                                  match = h;
                                  return false;
                              });
        if (match) {
            const std::string label = dependency_label(i);
            if (trace) {
                trace->push_back({TraceEvent::Kind::Failure, steps, label,
                                  *match, {}, {}, "constraint matched"});
            }
            return ChaseFailure{steps, label,
                                "constraint body matched with " + match->text()};
        }
    }
    return std::nullopt;
}

std::optional<Substitution> tgd_applicable(const Dependency& tgd,
                                           const Instance& instance) {
    const Dtgd& rule = require_rule(tgd, true);
    std::optional<Substitution> first;
    for_each_homomorphism(rule.body, instance, {}, [&](const Substitution& h) {
        if (head_satisfiable(rule, h, instance)) return true;
        first = h;
        return false;
    });
    return first;
}

std::vector<Substitution> applicable_homomorphisms(const Dependency& dtgd,
                                                   const Instance& instance) {
    const Dtgd& rule = require_rule(dtgd, false);
    std::vector<Substitution> result;
    for_each_homomorphism(rule.body, instance, {}, [&](const Substitution& h) {
        if (!head_satisfiable(rule, h, instance)) result.push_back(h);
        return true;
    });
    return result;
}

Instance apply_tgd(const Dependency& tgd, const Substitution& h,
                   const Instance& instance, NullSource& nulls) {
    const Dtgd& rule = require_rule(tgd, true);
    Instance out = instance;
    fire_disjunct(rule.disjuncts[0], h, out, nulls, nullptr);
    return out;
}

std::optional<Instance> apply_egd(const Egd& egd, const Substitution& h,
                                  const Instance& instance) {
    const Term l = h.image(egd.left);
    const Term r = h.image(egd.right);
    if (l == r) return instance;
    if (!l.is_null() && !r.is_null()) return std::nullopt;
    Term gone = l, kept = r;
    if (l.is_null() && r.is_null()) {
        if (null_outlives(l, r)) std::swap(gone, kept);
    } else if (r.is_null()) {
        std::swap(gone, kept);
    }
    Instance out = instance;
    out.replace_term(gone, kept);
    return out;
}

bool satisfies_all(const Instance& instance,
                   const std::vector<Dependency>& sigma) {
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const std::vector<Dependency> one{sigma[i]};
        if (const Dtgd* tgd = std::get_if<Dtgd>(&sigma[i])) {
            bool applicable = false;
            for_each_homomorphism(tgd->body, instance, {},
                                  [&](const Substitution& h) {
                                      if (head_satisfiable(*tgd, h, instance)) {
                                          return true;
                                      }
                                      applicable = true;
                                      return false;
                                  });
            if (applicable) return false;
        } else if (std::holds_alternative<Egd>(sigma[i])) {
            if (first_egd_violation(instance, one, {0})) return false;
        } else {
            if (violated_constraint(instance, one, ApplicationOrder::Canonical)) {
                return false;
            }
        }
    }
    return true;
}

ChaseOutcome chase(const Instance& db, const std::vector<Dependency>& sigma,
                   const ChaseBudget& budget, ApplicationOrder order,
                   std::vector<TraceEvent>* trace, NullSource nulls) {
    for (const Dependency& d : sigma) {
        if (const Dtgd* tgd = std::get_if<Dtgd>(&d); tgd && !tgd->is_tgd()) {
            throw std::invalid_argument(
                "the standard chase accepts single-disjunct rules only; use "
                "the disjunctive chase");
        }
    }

    const std::vector<std::size_t> idx = index_order(sigma.size(), order);
    Instance current = db;
    std::uint64_t steps = 0;
    std::uint32_t level = 0;

    while (true) {
        if (auto fail = egd_fixpoint(current, sigma, order, steps, trace)) {
            return {std::move(*fail)};
        }
        if (auto fail = violated_constraint(current, sigma, order, steps, trace)) {
            return {std::move(*fail)};
        }

        // Every homomorphism applicable at the start of the round fires once.
        std::vector<std::pair<std::size_t, Substitution>> batch;
        for (std::size_t i : idx) {
            if (!std::holds_alternative<Dtgd>(sigma[i])) continue;
            std::vector<Substitution> homs =
                applicable_homomorphisms(sigma[i], current);
            if (order == ApplicationOrder::Reversed) {
                std::reverse(homs.begin(), homs.end());
            }
            for (Substitution& h : homs) batch.emplace_back(i, std::move(h));
        }
        if (batch.empty()) return {ChaseSuccess{std::move(current), steps}};
        if (budget.max_depth && level >= *budget.max_depth) {
            return {ChaseBudgetExhausted{std::move(current), steps}};
        }
        ++level;
        for (auto& [i, h] : batch) {
            if (budget.max_steps && steps >= *budget.max_steps) {
                return {ChaseBudgetExhausted{std::move(current), steps}};
            }
            const Dtgd& rule = std::get<Dtgd>(sigma[i]);
            std::vector<Atom> added;
            fire_disjunct(rule.disjuncts[0], h, current, nulls, &added);
            ++steps;
            if (trace) {
                trace->push_back({TraceEvent::Kind::TgdStep, steps,
                                  dependency_label(i), h, std::move(added),
                                  {}, {}});
            }
        }
    }
}

}  // namespace chasekit
