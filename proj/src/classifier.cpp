#include "chasekit/classifier.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"

#include "chasekit/printer.hpp"

namespace chasekit {

std::string TgdView::label(bool multi) const {
    std::string s = dependency_label(dep_index);
    if (multi) s += "/" + std::to_string(disjunct_index + 1);
    return s;
}

std::vector<TgdView> tgd_views(const std::vector<Dependency>& sigma) {
    std::vector<TgdView> views;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const Dtgd* tgd = std::get_if<Dtgd>(&sigma[i]);
        if (!tgd) continue;
        for (std::size_t j = 0; j < tgd->disjuncts.size(); ++j) {
            views.push_back({i, j, tgd->body, tgd->disjuncts[j]});
        }
    }
    return views;
}

namespace {

const Dtgd& require_tgd(const Dependency& d) {
    const Dtgd* tgd = std::get_if<Dtgd>(&d);
    if (!tgd || !tgd->is_tgd()) throw NotATgdError();
    return *tgd;
}

bool atom_repeats_variable(const Atom& a) {
    std::set<std::string> seen;
    for (const Term& t : a.args) {
        if (t.is_variable() && !seen.insert(t.name()).second) return true;
    }
    return false;
}

bool view_is_id(const std::vector<Atom>& body, const Disjunct& disjunct) {
    return body.size() == 1 && disjunct.head.size() == 1 &&
           !atom_repeats_variable(body[0]) &&
           !atom_repeats_variable(disjunct.head[0]);
}

std::optional<Atom> body_guard(const std::vector<Atom>& body,
                               const std::set<std::string>& must_cover) {
    for (const Atom& a : body) {
        const std::set<std::string> vars = variables_of(a);
        bool covers = std::all_of(
            must_cover.begin(), must_cover.end(),
            [&vars](const std::string& v) { return vars.count(v) > 0; });
        if (covers) return a;
    }
    return std::nullopt;
}

// Positions a variable occupies in a conjunction.
std::set<Position> positions_of(const std::vector<Atom>& atoms,
                                const std::string& var) {
    std::set<Position> out;
    for (const Atom& a : atoms) {
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (a.args[i].is_variable() && a.args[i].name() == var) {
                out.insert({a.predicate, static_cast<int>(i) + 1});
            }
        }
    }
    return out;
}

}  // namespace

bool is_inclusion_dependency(const Dependency& d) {
    const Dtgd& tgd = require_tgd(d);
    return view_is_id(tgd.body, tgd.disjuncts[0]);
}

bool is_linear(const Dependency& d) {
    return require_tgd(d).body.size() == 1;
}

std::optional<Atom> guard_of(const Dependency& d) {
    const Dtgd& tgd = require_tgd(d);
    return body_guard(tgd.body, variables_of(tgd.body));
}

std::set<Position> affected_positions(const std::vector<Dependency>& sigma) {
    const std::vector<TgdView> views = tgd_views(sigma);
    std::set<Position> affected;
    for (const TgdView& v : views) {
        std::set<std::string> existentials;
        for (const Term& e : v.disjunct.existentials) existentials.insert(e.name());
        for (const std::string& e : existentials) {
            auto pos = positions_of(v.disjunct.head, e);
            affected.insert(pos.begin(), pos.end());
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const TgdView& v : views) {
            for (const std::string& var : variables_of(v.body)) {
                const std::set<Position> in_body = positions_of(v.body, var);
                bool only_affected = std::all_of(
                    in_body.begin(), in_body.end(),
                    [&affected](const Position& p) { return affected.count(p) > 0; });
                if (!only_affected) continue;
                for (const Position& p : positions_of(v.disjunct.head, var)) {
                    changed |= affected.insert(p).second;
                }
            }
        }
    }
    return affected;
}

bool is_weakly_guarded(const std::vector<Dependency>& sigma) {
    const std::set<Position> affected = affected_positions(sigma);
    for (const Dependency& d : sigma) {
        const Dtgd* tgd = std::get_if<Dtgd>(&d);
        if (!tgd) continue;
        std::set<std::string> null_admitting;
        for (const std::string& var : variables_of(tgd->body)) {
            const std::set<Position> in_body = positions_of(tgd->body, var);
            bool only_affected = std::all_of(
                in_body.begin(), in_body.end(),
                [&affected](const Position& p) { return affected.count(p) > 0; });
            if (only_affected) null_admitting.insert(var);
        }
        if (!body_guard(tgd->body, null_admitting)) return false;
    }
    return true;
}

DependencyGraph dependency_graph(const std::vector<Dependency>& sigma) {
    DependencyGraph g;
    const std::vector<TgdView> views = tgd_views(sigma);
    auto add_vertices = [&g](const std::vector<Atom>& atoms) {
        for (const Atom& a : atoms) {
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                g.vertices.insert({a.predicate, static_cast<int>(i) + 1});
            }
        }
    };
    for (const TgdView& v : views) {
        add_vertices(v.body);
        add_vertices(v.disjunct.head);
    }
    for (const TgdView& v : views) {
        std::set<std::string> existentials;
        for (const Term& e : v.disjunct.existentials) existentials.insert(e.name());

        std::set<Position> universal_body_positions;
        for (const std::string& var : variables_of(v.body)) {
            auto body_pos = positions_of(v.body, var);
            universal_body_positions.insert(body_pos.begin(), body_pos.end());
            for (const Position& from : body_pos) {
                for (const Position& to : positions_of(v.disjunct.head, var)) {
                    g.edges.insert({from, to, DependencyGraph::EdgeKind::Normal});
                }
            }
        }
        for (const std::string& e : existentials) {
            for (const Position& to : positions_of(v.disjunct.head, e)) {
                for (const Position& from : universal_body_positions) {
                    g.edges.insert({from, to, DependencyGraph::EdgeKind::Special});
                }
            }
        }
    }
    return g;
}

std::optional<std::vector<Position>> find_special_cycle(
    const DependencyGraph& g) {
    std::map<Position, std::vector<Position>> succ;
    for (const auto& e : g.edges) succ[e.from].push_back(e.to);

    for (const auto& e : g.edges) {
        if (e.kind != DependencyGraph::EdgeKind::Special) continue;
        // The special edge closes the cycle iff e.from is reachable from e.to.
        std::map<Position, Position> parent;
        std::deque<Position> frontier{e.to};
        std::set<Position> seen{e.to};
        bool reached = (e.to == e.from);
        while (!reached && !frontier.empty()) {
            Position at = frontier.front();
            frontier.pop_front();
            for (const Position& next : succ[at]) {
                if (!seen.insert(next).second) continue;
                parent.emplace(next, at);
                if (next == e.from) {
                    reached = true;
                    break;
                }
                frontier.push_back(next);
            }
        }
        if (!reached) continue;
        std::vector<Position> tail;
        if (!(e.to == e.from)) {
            for (Position at = e.from;; at = parent.at(at)) {
                tail.push_back(at);
                if (at == e.to) break;
            }
            std::reverse(tail.begin(), tail.end());
            tail.erase(tail.begin());  // e.to is already in the cycle
        }
        std::vector<Position> cycle{e.from, e.to};
        cycle.insert(cycle.end(), tail.begin(), tail.end());
        if (!(cycle.back() == e.from)) cycle.push_back(e.from);
        return cycle;
    }
    return std::nullopt;
}

bool is_weakly_acyclic(const std::vector<Dependency>& sigma) {
    return !find_special_cycle(dependency_graph(sigma)).has_value();
}

namespace {

void mark_variable(const std::vector<TgdView>& views, std::size_t view_index,
                   const std::string& var, Marking& m) {
    const TgdView& v = views[view_index];
    m.variables.insert({v.dep_index, v.disjunct_index, var});
    for (std::size_t ai = 0; ai < v.body.size(); ++ai) {
        const Atom& a = v.body[ai];
        for (std::size_t k = 0; k < a.args.size(); ++k) {
            if (a.args[k].is_variable() && a.args[k].name() == var) {
                m.occurrences.insert({v.dep_index, v.disjunct_index, ai, k});
            }
        }
    }
}

bool view_marked(const Marking& m, const TgdView& v, const std::string& var) {
    return m.variables.count({v.dep_index, v.disjunct_index, var}) > 0;
}

bool propagation_pass(const std::vector<TgdView>& views, Marking& m) {
    bool changed = false;
    for (std::size_t i = 0; i < views.size(); ++i) {
        const TgdView& producer = views[i];
        for (const std::string& var : variables_of(producer.body)) {
            if (view_marked(m, producer, var)) continue;
            const std::set<Position> head_pos =
                positions_of(producer.disjunct.head, var);
            if (head_pos.empty()) continue;
            // Some single body atom of another rule must carry marked
            // variables at all of those positions.
            bool triggered = false;
            for (const TgdView& consumer : views) {
                for (const Atom& a : consumer.body) {
                    bool all_marked = true;
                    for (const Position& p : head_pos) {
                        if (p.predicate != a.predicate ||
                            static_cast<std::size_t>(p.index) > a.args.size()) {
                            all_marked = false;
                            break;
                        }
                        const Term& t = a.args[p.index - 1];
                        if (!t.is_variable() ||
                            !view_marked(m, consumer, t.name())) {
                            all_marked = false;
                            break;
                        }
                    }
                    if (all_marked) {
                        triggered = true;
                        break;
                    }
                }
                if (triggered) break;
            }
            if (triggered) {
                mark_variable(views, i, var, m);
                changed = true;
            }
        }
    }
    return changed;
}

}  // namespace

Marking smarking(const std::vector<Dependency>& sigma) {
    const std::vector<TgdView> views = tgd_views(sigma);
    Marking m;
    for (std::size_t i = 0; i < views.size(); ++i) {
        const TgdView& v = views[i];
        for (const std::string& var : variables_of(v.body)) {
            bool missing_somewhere = std::any_of(
                v.disjunct.head.begin(), v.disjunct.head.end(),
                [&var](const Atom& a) { return variables_of(a).count(var) == 0; });
            if (missing_somewhere) mark_variable(views, i, var, m);
        }
    }
    while (propagation_pass(views, m)) {
    }
    return m;
}

bool smarking_propagation_pass(const std::vector<Dependency>& sigma,
                               Marking& m) {
    return propagation_pass(tgd_views(sigma), m);
}

std::optional<StickinessViolation> sticky_violation(
    const std::vector<Dependency>& sigma) {
    const Marking m = smarking(sigma);
    for (const auto& [dep, disjunct, var] : m.variables) {
        (void)disjunct;
        const Dtgd& tgd = std::get<Dtgd>(sigma[dep]);
        std::size_t count = 0;
        for (const Atom& a : tgd.body) {
            for (const Term& t : a.args) {
                if (t.is_variable() && t.name() == var) ++count;
            }
        }
        if (count > 1) return StickinessViolation{dep, var};
    }
    return std::nullopt;
}

bool is_sticky(const std::vector<Dependency>& sigma) {
    return !sticky_violation(sigma).has_value();
}

FragmentReport classify(const std::vector<Dependency>& sigma) {
    FragmentReport report;
    const std::vector<TgdView> views = tgd_views(sigma);

    bool multi = false;
    for (const Dependency& d : sigma) {
        if (const Dtgd* tgd = std::get_if<Dtgd>(&d)) {
            ++report.tgd_count;
            multi |= !tgd->is_tgd();
        } else if (std::holds_alternative<Egd>(d)) {
            ++report.egd_count;
        } else {
            ++report.constraint_count;
        }
    }

    report.id = true;
    report.linear = true;
    report.guarded = true;
    for (const TgdView& v : views) {
        report.view_labels.push_back(v.label(multi));
        report.id = report.id && view_is_id(v.body, v.disjunct);
        report.linear = report.linear && v.body.size() == 1;
        std::optional<Atom> guard = body_guard(v.body, variables_of(v.body));
        report.guarded = report.guarded && guard.has_value();
        report.guards.push_back(std::move(guard));
    }

    report.affected = affected_positions(sigma);
    report.weakly_guarded = true;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const Dtgd* tgd = std::get_if<Dtgd>(&sigma[i]);
        if (!tgd) continue;
        std::set<std::string> null_admitting;
        for (const std::string& var : variables_of(tgd->body)) {
            const std::set<Position> in_body = positions_of(tgd->body, var);
            bool only_affected =
                std::all_of(in_body.begin(), in_body.end(),
                            [&report](const Position& p) {
                                return report.affected.count(p) > 0;
                            });
            if (only_affected) null_admitting.insert(var);
        }
        std::optional<Atom> weak_guard = body_guard(tgd->body, null_admitting);
        report.weakly_guarded = report.weakly_guarded && weak_guard.has_value();
        report.weak_guard_labels.push_back(dependency_label(i));
        report.weak_guards.push_back(std::move(weak_guard));
    }

    report.special_cycle = find_special_cycle(dependency_graph(sigma));
    report.weakly_acyclic = !report.special_cycle.has_value();

    const Marking marking = smarking(sigma);
    for (const auto& [dep, disjunct, var] : marking.variables) {
        (void)disjunct;
        report.marked.emplace_back(dependency_label(dep), var);
    }
    std::sort(report.marked.begin(), report.marked.end());
    report.marked.erase(std::unique(report.marked.begin(), report.marked.end()),
                        report.marked.end());
    if (auto violation = sticky_violation(sigma)) {
        report.violation = {dependency_label(violation->dep_index),
                            violation->variable};
    }
    report.sticky = !report.violation.has_value();

    if (multi) {
        report.warnings.push_back(
            "disjunctive rules present: per-rule fragments use the "
            "disjunct-wise convention; stickiness of disjunctive sets is "
            "reported under the same convention");
    }
    if (report.egd_count + report.constraint_count > 0) {
        report.warnings.push_back(
            "equality rules and negative constraints are ignored by the "
            "fragment checks");
    }
    return report;
}

std::string FragmentReport::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["linear"] = linear;
    j["guarded"] = guarded;
    j["weakly_guarded"] = weakly_guarded;
    j["weakly_acyclic"] = weakly_acyclic;
    j["sticky"] = sticky;

    nlohmann::ordered_json witnesses;
    nlohmann::ordered_json guards_json = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < guards.size(); ++i) {
        nlohmann::ordered_json g;
        g["rule"] = view_labels[i];
        g["guard"] = guards[i] ? nlohmann::ordered_json(chasekit::to_text(*guards[i]))
                               : nlohmann::ordered_json(nullptr);
        guards_json.push_back(std::move(g));
    }
    witnesses["guards"] = std::move(guards_json);

    nlohmann::ordered_json weak_json = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < weak_guards.size(); ++i) {
        nlohmann::ordered_json g;
        g["rule"] = weak_guard_labels[i];
        g["weak_guard"] = weak_guards[i]
                              ? nlohmann::ordered_json(chasekit::to_text(*weak_guards[i]))
                              : nlohmann::ordered_json(nullptr);
        weak_json.push_back(std::move(g));
    }
    witnesses["weak_guards"] = std::move(weak_json);

    nlohmann::ordered_json affected_json = nlohmann::ordered_json::array();
    for (const Position& p : affected) affected_json.push_back(p.text());
    witnesses["affected_positions"] = std::move(affected_json);

    if (special_cycle) {
        nlohmann::ordered_json cycle = nlohmann::ordered_json::array();
        for (const Position& p : *special_cycle) cycle.push_back(p.text());
        witnesses["special_edge_cycle"] = std::move(cycle);
    } else {
        witnesses["special_edge_cycle"] = nullptr;
    }

    nlohmann::ordered_json marked_json = nlohmann::ordered_json::array();
    for (const auto& [rule, var] : marked) {
        marked_json.push_back({{"rule", rule}, {"variable", var}});
    }
    witnesses["marked_variables"] = std::move(marked_json);

    if (violation) {
        witnesses["sticky_violation"] = {{"rule", violation->first},
                                         {"variable", violation->second}};
    } else {
        witnesses["sticky_violation"] = nullptr;
    }
    j["witnesses"] = std::move(witnesses);

    j["counts"] = {{"tgds", tgd_count},
                   {"egds", egd_count},
                   {"constraints", constraint_count}};
    j["warnings"] = warnings;
    return j.dump(2);
}

std::string FragmentReport::to_text() const {
    std::ostringstream os;
    auto flag = [](bool b) { return b ? "true" : "false"; };
    os << "id: " << flag(id) << "\n";
    os << "linear: " << flag(linear) << "\n";
    os << "guarded: " << flag(guarded) << "\n";
    os << "weakly_guarded: " << flag(weakly_guarded) << "\n";
    os << "weakly_acyclic: " << flag(weakly_acyclic) << "\n";
    os << "sticky: " << flag(sticky) << "\n";
    for (std::size_t i = 0; i < guards.size(); ++i) {
        os << "guard " << view_labels[i] << ": "
           << (guards[i] ? chasekit::to_text(*guards[i]) : "none") << "\n";
    }
    for (std::size_t i = 0; i < weak_guards.size(); ++i) {
        os << "weak guard " << weak_guard_labels[i] << ": "
           << (weak_guards[i] ? chasekit::to_text(*weak_guards[i]) : "none") << "\n";
    }
    if (!affected.empty()) {
        os << "affected:";
        for (const Position& p : affected) os << " " << p.text();
        os << "\n";
    }
    if (special_cycle) {
        os << "special edge cycle:";
        for (const Position& p : *special_cycle) os << " " << p.text();
        os << "\n";
    }
    if (violation) {
        os << "sticky violation: rule " << violation->first << ", variable "
           << violation->second << "\n";
    }
    for (const std::string& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

}  // namespace chasekit
