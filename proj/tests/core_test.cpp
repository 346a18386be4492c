#include "doctest.h"

#include <random>

#include "chasekit/homomorphism.hpp"
#include "chasekit/instance.hpp"
#include "chasekit/printer.hpp"
#include "chasekit/query.hpp"
#include "chasekit/substitution.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace chasekit;

namespace {

Term C(const std::string& s) { return Term::constant(s); }
Term V(const std::string& s) { return Term::variable(s); }
Term N(std::uint64_t id) { return Term::null("0", id); }

// Substitutions as sorted text, for order-insensitive set comparison.
std::set<std::string> texts(const std::vector<Substitution>& hs) {
    std::set<std::string> out;
    for (const Substitution& h : hs) out.insert(h.text());
    return out;
}

}  // namespace

TEST_CASE("apply_substitution") {
    const std::vector<Atom> person_a{{"person", {C("a")}}};
    CHECK(apply_substitution(Substitution{}, person_a) == person_a);

    Substitution s;
    s.bind("X", C("a"));
    s.bind("Z", N(1));
    const std::vector<Atom> c{{"person", {V("X"), V("Z")}}};
    const std::vector<Atom> expected{{"person", {C("a"), N(1)}}};
    CHECK(apply_substitution(s, c) == expected);

    Substitution partial;
    partial.bind("X", C("a"));
    const std::vector<Atom> rxy{{"r", {V("X"), V("Y")}}};
    CHECK_THROWS_AS(apply_substitution(partial, rxy, Strictness::Strict),
                    StrictModeUnbound);
    // Lenient mode leaves the unbound variable alone.
    CHECK(apply_substitution(partial, rxy)[0].args[1] == V("Y"));
}

TEST_CASE("apply_substitution composes") {
    const std::vector<Atom> c{{"r", {V("X"), V("Y"), N(5)}}};
    Substitution h;
    h.bind("X", N(1));
    h.bind("Y", C("b"));
    Substitution g;
    g.bind_null(N(1), C("a"));
    g.bind_null(N(5), C("c"));

    Substitution composed;
    composed.bind("X", g.image(h.image(V("X"))));
    composed.bind("Y", g.image(h.image(V("Y"))));
    composed.bind_null(N(5), C("c"));

    CHECK(apply_substitution(g, apply_substitution(h, c)) ==
          apply_substitution(composed, c));
}

TEST_CASE("find_homomorphisms basics") {
    SUBCASE("empty body yields exactly the seed") {
        Instance anything{{"r", {C("a")}}};
        auto hs = find_homomorphisms({}, anything, {});
        REQUIRE(hs.size() == 1);
        CHECK(hs[0].empty());
    }
    SUBCASE("unary enumeration in canonical order") {
        Instance i{{"person", {C("a")}}, {"person", {C("b")}}};
        const std::vector<Atom> c{{"person", {V("X")}}};
        auto hs = find_homomorphisms(c, i);
        REQUIRE(hs.size() == 2);
        CHECK(hs[0].text() == "{X->a}");
        CHECK(hs[1].text() == "{X->b}");
        CHECK(texts(hs) == texts(oracle::brute_force_homomorphisms(c, i)));
    }
    SUBCASE("repeated variable filters") {
        Instance i{{"r", {C("a"), C("b")}}};
        const std::vector<Atom> c{{"r", {V("X"), V("X")}}};
        CHECK(find_homomorphisms(c, i).empty());
        CHECK(oracle::brute_force_homomorphisms(c, i).empty());
    }
    SUBCASE("nulls on the pattern side match exactly unless seeded") {
        Instance i{{"r", {N(1)}}, {"r", {C("a")}}};
        const std::vector<Atom> c{{"r", {N(1)}}};
        auto hs = find_homomorphisms(c, i);
        REQUIRE(hs.size() == 1);

        Substitution seed;
        seed.bind_null(N(1), C("a"));
        auto seeded = find_homomorphisms(c, i, seed);
        REQUIRE(seeded.size() == 1);
        CHECK(*seeded[0].null_image(N(1)) == C("a"));
    }
}

TEST_CASE("homomorphism soundness and completeness on random inputs") {
    gen::Rng rng(20240701);
    for (int round = 0; round < 80; ++round) {
        const gen::PredPool pool = gen::random_pool(rng, 3, 2);
        Instance inst = gen::random_database(rng, pool, 6, 4);
        ConjunctiveQuery q = gen::random_bcq(rng, pool, 3, 4, 4);

        auto engine = find_homomorphisms(q.body, inst);
        for (const Substitution& h : engine) {
            for (const Atom& a : apply_substitution(h, q.body)) {
                CHECK(inst.contains(a));
            }
        }
        CHECK(texts(engine) ==
              texts(oracle::brute_force_homomorphisms(q.body, inst)));
    }
}

TEST_CASE("normalize_query") {
    SUBCASE("variable merge") {
        ConjunctiveQuery q;
        q.body = {{"r", {V("X"), V("Y")}}};
        q.equalities.insert(make_equality(V("X"), V("Y")));
        auto n = normalize_query(q);
        REQUIRE(n.has_value());
        CHECK(n->equalities.empty());
        CHECK(n->body == std::vector<Atom>{{"r", {V("X"), V("X")}}});
    }
    SUBCASE("constant substitution") {
        ConjunctiveQuery q;
        q.body = {{"r", {V("X")}}};
        q.equalities.insert(make_equality(V("X"), C("a")));
        auto n = normalize_query(q);
        REQUIRE(n.has_value());
        CHECK(n->body == std::vector<Atom>{{"r", {C("a")}}});
    }
    SUBCASE("distinct constants never equal") {
        ConjunctiveQuery q;
        q.body = {{"r", {V("X")}}};
        q.equalities.insert(make_equality(C("a"), C("b")));
        CHECK_FALSE(normalize_query(q).has_value());
    }
    SUBCASE("answer terms rewrite through the unifier") {
        ConjunctiveQuery q;
        q.answer_terms = {V("X")};
        q.body = {{"r", {C("a")}}};
        q.equalities.insert(make_equality(V("X"), C("a")));
        auto n = normalize_query(q);
        REQUIRE(n.has_value());
        CHECK(n->answer_terms == std::vector<Term>{C("a")});
        CHECK(answers(*n, Instance{{"r", {C("a")}}}) ==
              std::set<std::vector<std::string>>{{"a"}});
    }
}

TEST_CASE("evaluate_bcq") {
    ConjunctiveQuery q;
    q.body = {{"person", {V("X")}}};
    CHECK(evaluate_bcq(q, Instance{{"person", {C("a")}}}));
    CHECK_FALSE(evaluate_bcq(q, Instance{}));

    ConjunctiveQuery join;
    join.body = {{"r", {V("X"), V("Y")}}, {"s", {V("Y")}}};
    Instance i{{"r", {C("a"), C("b")}}, {"s", {C("c")}}};
    CHECK(oracle::brute_force_homomorphisms(join.body, i).empty());
    CHECK_FALSE(evaluate_bcq(join, i));

    ConjunctiveQuery unary;
    unary.answer_terms = {V("X")};
    unary.body = {{"person", {V("X")}}};
    CHECK_THROWS_AS(evaluate_bcq(unary, Instance{}), NotBooleanError);
}

TEST_CASE("answers") {
    SUBCASE("null images are excluded") {
        ConjunctiveQuery q;
        q.answer_terms = {V("X")};
        q.body = {{"person", {V("X")}}};
        Instance i{{"person", {C("a")}}, {"person", {N(1)}}};
        CHECK(answers(q, i) == std::set<std::vector<std::string>>{{"a"}});
    }
    SUBCASE("boolean query yields the empty tuple when entailed") {
        ConjunctiveQuery q;
        q.body = {{"person", {C("a")}}};
        Instance i{{"person", {C("a")}}};
        CHECK(answers(q, i) == std::set<std::vector<std::string>>{{}});
    }
    SUBCASE("binary enumeration") {
        ConjunctiveQuery q;
        q.answer_terms = {V("X"), V("Y")};
        q.body = {{"r", {V("X"), V("Y")}}};
        Instance i{{"r", {C("a"), C("b")}}, {"r", {C("b"), C("a")}}};
        std::set<std::vector<std::string>> expected{{"a", "b"}, {"b", "a"}};
        CHECK(answers(q, i) == expected);
    }
}

TEST_CASE("boolean answers agree with evaluate_bcq on random inputs") {
    gen::Rng rng(424242);
    for (int round = 0; round < 60; ++round) {
        const gen::PredPool pool = gen::random_pool(rng, 3, 2);
        Instance inst = gen::random_database(rng, pool, 6, 3);
        ConjunctiveQuery q = gen::random_bcq(rng, pool, 2, 3, 3);
        const bool entailed = evaluate_bcq(q, inst);
        const auto tuples = answers(q, inst);
        CHECK(entailed == (tuples == std::set<std::vector<std::string>>{{}}));
        CHECK((!entailed) == tuples.empty());
    }
}
