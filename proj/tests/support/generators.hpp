#pragma once

// Seeded random generators for property tests. Rules are safe by
// construction; set-level properties (weak acyclicity, guardedness) are
// either built in or obtained by rejection sampling.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chasekit/classifier.hpp"
#include "chasekit/dependency.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/query.hpp"

namespace gen {

using chasekit::Atom;
using chasekit::ConjunctiveQuery;
using chasekit::Dependency;
using chasekit::Disjunct;
using chasekit::Dtgd;
using chasekit::Egd;
using chasekit::Instance;
using chasekit::NegConstraint;
using chasekit::Term;

using Rng = std::mt19937_64;
using PredPool = std::vector<std::pair<std::string, std::size_t>>;

inline std::size_t pick_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline PredPool random_pool(Rng& rng, std::size_t max_preds,
                            std::size_t max_arity) {
    static const char* names[] = {"p", "q", "r", "s", "t", "u"};
    PredPool pool;
    std::size_t n = 1 + pick_index(rng, max_preds);
    for (std::size_t i = 0; i < n; ++i) {
        pool.emplace_back(names[i], 1 + pick_index(rng, max_arity));
    }
    return pool;
}

inline std::vector<std::string> var_pool(std::size_t n) {
    static const char* names[] = {"X", "Y", "Z", "W", "V", "U"};
    return std::vector<std::string>(names, names + n);
}

inline std::vector<std::string> constant_pool(std::size_t n) {
    static const char* names[] = {"a", "b", "c", "d"};
    return std::vector<std::string>(names, names + n);
}

inline Atom random_atom(Rng& rng, const PredPool& pool,
                        const std::vector<std::string>& vars,
                        const std::vector<std::string>& constants,
                        double constant_prob) {
    const auto& [pred, arity] = pool[pick_index(rng, pool.size())];
    Atom a{pred, {}};
    for (std::size_t i = 0; i < arity; ++i) {
        if (!constants.empty() && chance(rng, constant_prob)) {
            a.args.push_back(
                Term::constant(constants[pick_index(rng, constants.size())]));
        } else {
            a.args.push_back(
                Term::variable(vars[pick_index(rng, vars.size())]));
        }
    }
    return a;
}

struct TgdConfig {
    std::size_t max_body_atoms = 3;
    std::size_t max_head_atoms = 2;
    std::size_t max_disjuncts = 1;
    std::size_t num_vars = 4;
    double existential_prob = 0.4;
    double constant_prob = 0.1;
};

// Head arguments are drawn from the body variables plus the disjunct's
// existentials, which keeps every rule safe.
inline Dependency random_tgd(Rng& rng, const PredPool& pool,
                             const TgdConfig& cfg) {
    const std::vector<std::string> vars = var_pool(cfg.num_vars);
    const std::vector<std::string> constants = constant_pool(2);
    Dtgd tgd;
    const std::size_t body_atoms = 1 + pick_index(rng, cfg.max_body_atoms);
    for (std::size_t i = 0; i < body_atoms; ++i) {
        tgd.body.push_back(
            random_atom(rng, pool, vars, constants, cfg.constant_prob));
    }
    std::vector<std::string> body_vars(variables_of(tgd.body).begin(),
                                       variables_of(tgd.body).end());

    const std::size_t disjuncts = 1 + pick_index(rng, cfg.max_disjuncts);
    for (std::size_t d = 0; d < disjuncts; ++d) {
        Disjunct disjunct;
        std::vector<std::string> existentials;
        if (chance(rng, cfg.existential_prob)) {
            existentials.push_back("E1");
            if (chance(rng, 0.3)) existentials.push_back("E2");
        }
        const std::size_t head_atoms = 1 + pick_index(rng, cfg.max_head_atoms);
        for (std::size_t i = 0; i < head_atoms; ++i) {
            const auto& [pred, arity] = pool[pick_index(rng, pool.size())];
            Atom a{pred, {}};
            for (std::size_t k = 0; k < arity; ++k) {
                if (!existentials.empty() && chance(rng, 0.35)) {
                    a.args.push_back(Term::variable(
                        existentials[pick_index(rng, existentials.size())]));
                } else if (!body_vars.empty() && !chance(rng, cfg.constant_prob)) {
                    a.args.push_back(Term::variable(
                        body_vars[pick_index(rng, body_vars.size())]));
                } else {
                    a.args.push_back(Term::constant(
                        constants[pick_index(rng, constants.size())]));
                }
            }
            disjunct.head.push_back(std::move(a));
        }
        const std::set<std::string> used = variables_of(disjunct.head);
        for (const std::string& e : existentials) {
            if (used.count(e)) disjunct.existentials.push_back(Term::variable(e));
        }
        tgd.disjuncts.push_back(std::move(disjunct));
    }
    return tgd;
}

inline std::vector<Dependency> random_tgd_set(Rng& rng, const PredPool& pool,
                                              std::size_t max_rules,
                                              const TgdConfig& cfg) {
    std::vector<Dependency> sigma;
    const std::size_t n = 1 + pick_index(rng, max_rules);
    for (std::size_t i = 0; i < n; ++i) {
        sigma.push_back(random_tgd(rng, pool, cfg));
    }
    return sigma;
}

// Rejection-samples a weakly-acyclic TGD set.
inline std::vector<Dependency> random_weakly_acyclic_set(Rng& rng,
                                                         const PredPool& pool,
                                                         std::size_t max_rules,
                                                         const TgdConfig& cfg) {
    while (true) {
        std::vector<Dependency> sigma = random_tgd_set(rng, pool, max_rules, cfg);
        if (chasekit::is_weakly_acyclic(sigma)) return sigma;
    }
}

// Every rule carries a guard by construction: the first body atom holds all
// of the rule's variables.
inline std::vector<Dependency> random_guarded_set(Rng& rng,
                                                  std::size_t max_rules) {
    static const PredPool wide = {{"g1", 3}, {"g2", 3}, {"h1", 2}, {"h2", 1}};
    std::vector<Dependency> sigma;
    const std::size_t n = 1 + pick_index(rng, max_rules);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t var_count = 1 + pick_index(rng, 3);
        std::vector<std::string> vars = var_pool(var_count);
        const auto& [gpred, garity] =
            wide[pick_index(rng, 2)];  // arity-3 guards
        Atom guard{gpred, {}};
        for (std::size_t i = 0; i < garity; ++i) {
            guard.args.push_back(
                Term::variable(vars[i < vars.size() ? i : pick_index(rng, vars.size())]));
        }
        Dtgd tgd;
        tgd.body.push_back(guard);
        const std::size_t extra = pick_index(rng, 3);
        for (std::size_t i = 0; i < extra; ++i) {
            tgd.body.push_back(random_atom(rng, wide, vars, {}, 0.0));
        }
        Disjunct disjunct;
        std::vector<std::string> existentials;
        if (chance(rng, 0.5)) existentials.push_back("E1");
        const auto& [hpred, harity] = wide[pick_index(rng, wide.size())];
        Atom head{hpred, {}};
        for (std::size_t i = 0; i < harity; ++i) {
            if (!existentials.empty() && chance(rng, 0.3)) {
                head.args.push_back(Term::variable(existentials[0]));
            } else {
                head.args.push_back(
                    Term::variable(vars[pick_index(rng, vars.size())]));
            }
        }
        disjunct.head.push_back(std::move(head));
        const std::set<std::string> used = variables_of(disjunct.head);
        for (const std::string& e : existentials) {
            if (used.count(e)) disjunct.existentials.push_back(Term::variable(e));
        }
        tgd.disjuncts.push_back(std::move(disjunct));
        sigma.push_back(std::move(tgd));
    }
    return sigma;
}

// Inclusion dependencies: one body atom, one head atom, no repeated
// variable on either side.
inline Dependency random_id(Rng& rng, const PredPool& pool) {
    const auto& [bpred, barity] = pool[pick_index(rng, pool.size())];
    std::vector<std::string> vars = var_pool(6);
    std::shuffle(vars.begin(), vars.end(), rng);
    Atom body{bpred, {}};
    for (std::size_t i = 0; i < barity; ++i) {
        body.args.push_back(Term::variable(vars[i]));
    }
    const auto& [hpred, harity] = pool[pick_index(rng, pool.size())];
    // Head slots use distinct body variables or distinct fresh existentials.
    std::vector<std::string> exported(vars.begin(), vars.begin() + barity);
    std::shuffle(exported.begin(), exported.end(), rng);
    Atom head{hpred, {}};
    std::vector<std::string> existentials;
    for (std::size_t i = 0; i < harity; ++i) {
        if (i < exported.size() && chance(rng, 0.7)) {
            head.args.push_back(Term::variable(exported[i]));
        } else {
            std::string e = "E" + std::to_string(i + 1);
            existentials.push_back(e);
            head.args.push_back(Term::variable(e));
        }
    }
    Disjunct disjunct;
    for (const std::string& e : existentials) {
        disjunct.existentials.push_back(Term::variable(e));
    }
    disjunct.head.push_back(std::move(head));
    return Dtgd{{std::move(body)}, {std::move(disjunct)}};
}

inline std::vector<Dependency> random_id_set(Rng& rng, const PredPool& pool,
                                             std::size_t max_rules) {
    std::vector<Dependency> sigma;
    const std::size_t n = 1 + pick_index(rng, max_rules);
    for (std::size_t i = 0; i < n; ++i) sigma.push_back(random_id(rng, pool));
    return sigma;
}

inline Instance random_database(Rng& rng, const PredPool& pool,
                                std::size_t max_facts,
                                std::size_t num_constants) {
    const std::vector<std::string> constants = constant_pool(num_constants);
    Instance db;
    const std::size_t n = 1 + pick_index(rng, max_facts);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [pred, arity] = pool[pick_index(rng, pool.size())];
        Atom a{pred, {}};
        for (std::size_t k = 0; k < arity; ++k) {
            a.args.push_back(
                Term::constant(constants[pick_index(rng, constants.size())]));
        }
        db.insert(std::move(a));
    }
    return db;
}

inline ConjunctiveQuery random_bcq(Rng& rng, const PredPool& pool,
                                   std::size_t max_atoms,
                                   std::size_t num_vars,
                                   std::size_t num_constants) {
    ConjunctiveQuery q;
    q.name = "q";
    const std::vector<std::string> vars = var_pool(num_vars);
    const std::vector<std::string> constants = constant_pool(num_constants);
    const std::size_t n = 1 + pick_index(rng, max_atoms);
    for (std::size_t i = 0; i < n; ++i) {
        q.body.push_back(random_atom(rng, pool, vars, constants, 0.25));
    }
    return q;
}

// Existential-free disjunctive program over a small Herbrand base, for
// model-enumeration cross-checks.
struct DisjunctiveCase {
    PredPool preds;
    std::vector<std::string> domain;
    Instance db;
    std::vector<Dependency> sigma;
    ConjunctiveQuery query;
};

inline DisjunctiveCase random_disjunctive_case(Rng& rng) {
    DisjunctiveCase c;
    switch (pick_index(rng, 4)) {
        case 0: c.preds = {{"p", 1}, {"r", 2}}; c.domain = {"a", "b", "c"}; break;
        case 1: c.preds = {{"p", 1}, {"r", 2}}; c.domain = {"a", "b"}; break;
        case 2: c.preds = {{"p", 1}, {"q", 1}, {"r", 2}}; c.domain = {"a", "b"}; break;
        default: c.preds = {{"p", 1}, {"q", 1}, {"s", 1}}; c.domain = {"a", "b", "c", "d"}; break;
    }
    TgdConfig cfg;
    cfg.max_body_atoms = 2;
    cfg.max_head_atoms = 1;
    cfg.max_disjuncts = 2;
    cfg.existential_prob = 0.0;
    cfg.constant_prob = 0.15;
    cfg.num_vars = 3;

    const std::size_t rules = 1 + pick_index(rng, 3);
    bool has_disjunction = false;
    for (std::size_t i = 0; i < rules; ++i) {
        Dependency d = random_tgd(rng, c.preds, cfg);
        has_disjunction |= std::get<Dtgd>(d).disjuncts.size() > 1;
        c.sigma.push_back(std::move(d));
    }
    if (!has_disjunction) {
        // Force at least one branching rule.
        Dependency d = random_tgd(rng, c.preds, cfg);
        Dtgd& tgd = std::get<Dtgd>(d);
        while (tgd.disjuncts.size() < 2) {
            tgd.disjuncts.push_back(tgd.disjuncts[0]);
            Dependency extra = random_tgd(rng, c.preds, cfg);
            tgd.disjuncts.back() = std::get<Dtgd>(extra).disjuncts[0];
            // Existential-free by construction; heads only use body vars or
            // constants, so the borrowed disjunct may mention variables not
            // in this body. Drop such disjuncts.
            const std::set<std::string> body_vars = variables_of(tgd.body);
            bool safe = true;
            for (const std::string& v : variables_of(tgd.disjuncts.back().head)) {
                safe &= body_vars.count(v) > 0;
            }
            if (!safe) tgd.disjuncts.pop_back();
        }
        c.sigma.push_back(std::move(d));
    }
    if (chance(rng, 0.25)) {
        // A negative constraint over one predicate.
        std::vector<Atom> body{random_atom(rng, c.preds, var_pool(2),
                                           c.domain, 0.2)};
        c.sigma.push_back(NegConstraint{std::move(body)});
    }
    if (chance(rng, 0.15)) {
        Atom a1{"r", {Term::variable("X"), Term::variable("Y")}};
        Atom a2{"r", {Term::variable("X"), Term::variable("Z")}};
        bool has_r = false;
        for (const auto& [pred, arity] : c.preds) has_r |= pred == "r" && arity == 2;
        if (has_r) {
            c.sigma.push_back(Egd{{a1, a2}, Term::variable("Y"),
                                  Term::variable("Z")});
        }
    }

    const std::size_t facts = 1 + pick_index(rng, 4);
    for (std::size_t i = 0; i < facts; ++i) {
        const auto& [pred, arity] = c.preds[pick_index(rng, c.preds.size())];
        Atom a{pred, {}};
        for (std::size_t k = 0; k < arity; ++k) {
            a.args.push_back(
                Term::constant(c.domain[pick_index(rng, c.domain.size())]));
        }
        c.db.insert(std::move(a));
    }
    c.query = random_bcq(rng, c.preds, 2, 2, c.domain.size());
    // Keep query constants inside the case's domain.
    for (Atom& a : c.query.body) {
        for (Term& t : a.args) {
            if (t.is_constant() &&
                std::find(c.domain.begin(), c.domain.end(), t.name()) ==
                    c.domain.end()) {
                t = Term::constant(c.domain[0]);
            }
        }
    }
    return c;
}

// A random well-formed program for serializer round-trips: facts, a mix of
// rule kinds, and queries with occasional equalities.
inline chasekit::Program random_program(Rng& rng) {
    chasekit::Program prog;
    const PredPool pool = random_pool(rng, 4, 3);
    TgdConfig cfg;
    cfg.max_disjuncts = 3;
    cfg.existential_prob = 0.5;
    cfg.constant_prob = 0.2;

    const std::size_t facts = pick_index(rng, 6);
    for (std::size_t i = 0; i < facts; ++i) {
        const auto& [pred, arity] = pool[pick_index(rng, pool.size())];
        Atom a{pred, {}};
        const std::vector<std::string> constants = constant_pool(4);
        for (std::size_t k = 0; k < arity; ++k) {
            a.args.push_back(
                Term::constant(constants[pick_index(rng, constants.size())]));
        }
        prog.facts.insert(std::move(a));
    }
    const std::size_t rules = 1 + pick_index(rng, 5);
    for (std::size_t i = 0; i < rules; ++i) {
        if (chance(rng, 0.15)) {
            Dependency d = random_tgd(rng, pool, cfg);
            prog.dependencies.push_back(
                NegConstraint{std::get<Dtgd>(d).body});
        } else if (chance(rng, 0.15)) {
            while (true) {
                Dependency d = random_tgd(rng, pool, cfg);
                const Dtgd& tgd = std::get<Dtgd>(d);
                std::vector<std::string> body_vars(
                    variables_of(tgd.body).begin(), variables_of(tgd.body).end());
                if (body_vars.size() < 2) continue;
                prog.dependencies.push_back(
                    Egd{tgd.body, Term::variable(body_vars[0]),
                        Term::variable(body_vars[1])});
                break;
            }
        } else {
            prog.dependencies.push_back(random_tgd(rng, pool, cfg));
        }
    }
    const std::size_t queries = pick_index(rng, 3);
    for (std::size_t i = 0; i < queries; ++i) {
        ConjunctiveQuery q = random_bcq(rng, pool, 3, 3, 4);
        q.name = "q" + std::to_string(i + 1);
        std::vector<std::string> body_vars(variables_of(q.body).begin(),
                                           variables_of(q.body).end());
        if (!body_vars.empty() && chance(rng, 0.6)) {
            q.answer_terms.push_back(
                Term::variable(body_vars[pick_index(rng, body_vars.size())]));
        }
        if (body_vars.size() >= 2 && chance(rng, 0.4)) {
            q.equalities.insert(chasekit::make_equality(
                Term::variable(body_vars[0]), Term::variable(body_vars[1])));
        }
        prog.queries.push_back(std::move(q));
    }
    return prog;
}

}  // namespace gen
