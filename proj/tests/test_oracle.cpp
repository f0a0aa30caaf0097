#include <doctest.h>

#include "convex/families.hpp"
#include "convex/nfa_freeness.hpp"
#include "convex/oracle.hpp"
#include "testutil.hpp"

using namespace convex;
using namespace testutil;

TEST_CASE("relation_holds: definitions") {
    Alphabet abc = Alphabet::from_tokens({"a", "b", "c"});
    for (const Word& w : all_words(2, 5)) CHECK(relation_holds(Relation::Prefix, {}, w));
    CHECK(relation_holds(Relation::Subword, wd(abc, "ab"), wd(abc, "acb")));
    CHECK(!relation_holds(Relation::Factor, wd(abc, "ab"), wd(abc, "acb")));
    CHECK(relation_holds(Relation::Suffix, wd(abc, "ba"), wd(abc, "aba")));
    CHECK(!relation_holds(Relation::Prefix, wd(abc, "b"), wd(abc, "ab")));
    CHECK(relation_holds(Relation::Factor, wd(abc, "bc"), wd(abc, "abca")));
}

TEST_CASE("relation_holds: partial order on sampled words") {
    std::mt19937 rng(53);
    auto words = all_words(2, 6);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    for (Relation r : kAllRelations) {
        for (int i = 0; i < 4000; ++i) {
            const Word& x = words[pick(rng)];
            const Word& y = words[pick(rng)];
            const Word& z = words[pick(rng)];
            CHECK(relation_holds(r, x, x));  // reflexive
            if (relation_holds(r, x, y) && relation_holds(r, y, z))
                CHECK(relation_holds(r, x, z));  // transitive
            if (relation_holds(r, x, y) && relation_holds(r, y, x))
                CHECK(x == y);  // antisymmetric
        }
    }
}

TEST_CASE("leftmost embeddings are consistent") {
    Alphabet ab = Alphabet::from_tokens({"a", "b"});
    Word w = wd(ab, "abab");
    auto pos = leftmost_embedding(Relation::Subword, wd(ab, "bb"), w);
    CHECK(pos == std::vector<int>{1, 3});
    pos = leftmost_embedding(Relation::Factor, wd(ab, "ba"), w);
    CHECK(pos == std::vector<int>{1, 2});
    pos = leftmost_embedding(Relation::Suffix, wd(ab, "ab"), w);
    CHECK(pos == std::vector<int>{2, 3});
}

TEST_CASE("oracle: unary family witnesses match the theory") {
    // (a^5)*: prefix-closure fails with (a, a^5)
    Dfa d5 = std::get<Dfa>(make_family({"unary-prefix-closed", 5}));
    auto r = brute_force_minimal_witness(d5, {Relation::Prefix, Mode::Closed, false, false}, 6);
    REQUIRE(r.outcome == OracleOutcome::Found);
    CHECK(r.witness->v == reps(0, 1));
    CHECK(r.witness->w == reps(0, 5));

    // unary-npc n=3: prefix-convexity witness (a^2, a^3, a^5)
    Dfa npc = std::get<Dfa>(make_family({"unary-npc", 3}));
    r = brute_force_minimal_witness(npc, {Relation::Prefix, Mode::Convex, false, false}, 6);
    REQUIRE(r.outcome == OracleOutcome::Found);
    CHECK(*r.witness->u == reps(0, 2));
    CHECK(r.witness->v == reps(0, 3));
    CHECK(r.witness->w == reps(0, 5));

    // unary-subword-closed n=4: (a^3, a^4)
    Dfa sw = std::get<Dfa>(make_family({"unary-subword-closed", 4}));
    r = brute_force_minimal_witness(sw, {Relation::Subword, Mode::Closed, false, false}, 6);
    REQUIRE(r.outcome == OracleOutcome::Found);
    CHECK(r.witness->v == reps(0, 3));
    CHECK(r.witness->w == reps(0, 4));

    // a^{n-1}(a^n)* n=3: subword-freeness witness (a^2, a^5)
    r = brute_force_minimal_witness(npc, {Relation::Subword, Mode::Free, false, false}, 8);
    REQUIRE(r.outcome == OracleOutcome::Found);
    CHECK(r.witness->v == reps(0, 2));
    CHECK(r.witness->w == reps(0, 5));
}

TEST_CASE("oracle: sigma-star subword-freeness witness is (eps, a)") {
    Dfa d = make_dfa({"a", "b"}, 1, 0, {0}, {0, 0});
    auto r = brute_force_minimal_witness(d, {Relation::Subword, Mode::Free, false, false}, 4);
    REQUIRE(r.outcome == OracleOutcome::Found);
    CHECK(r.witness->v.empty());
    CHECK(r.witness->w == Word{0});
}

TEST_CASE("oracle: no witness in sigma-star for factor convexity") {
    Dfa d = make_dfa({"a", "b"}, 1, 0, {0}, {0, 0});
    auto r = brute_force_verdict(d, {Relation::Factor, Mode::Convex, false, false}, 6);
    CHECK(r.outcome == OracleOutcome::NoWitness);
    CHECK(r.searched_len == 6);
}

TEST_CASE("oracle: budget exhaustion reports a resource limit") {
    Dfa d = make_dfa({"a", "b"}, 1, 0, {0}, {0, 0});
    auto r = brute_force_verdict(d, {Relation::Factor, Mode::Convex, false, false}, 40,
                                 /*word_budget=*/1000);
    CHECK(r.outcome == OracleOutcome::ResourceLimitHit);
    CHECK(r.searched_len < 40);
}

TEST_CASE("oracle: early stop works on an NFA input") {
    Alphabet ab = Alphabet::from_tokens({"a", "b"});
    Nfa m;
    m.alphabet = ab;
    m.states = 4;
    m.start = 0;
    m.accepting = {0, 0, 0, 1};
    m.add(0, 0, 1);   // a
    m.add(1, 1, 3);   // ab in L
    m.add(0, 0, 2);   // a...
    m.add(2, 0, 3);   // aa in L
    m.normalize();
    auto r = brute_force_minimal_witness(m, {Relation::Prefix, Mode::Free, false, false}, 10);
    CHECK(r.outcome == OracleOutcome::NoWitness);  // {ab, aa} is prefix-free
    m.accepting[1] = 1;                            // now a is in L too
    auto r2 = brute_force_minimal_witness(m, {Relation::Prefix, Mode::Free, false, false}, 10);
    REQUIRE(r2.outcome == OracleOutcome::Found);
    CHECK(r2.witness->v == Word{0});
    CHECK(r2.witness->w.size() == 2);
}

TEST_CASE("oracle tie-breaking: first length, then w, then v") {
    // L over {a,b} accepting everything except the single word "b".
    Dfa d = make_dfa({"a", "b"}, 3, 0, {0, 2}, {2, 1, 2, 2, 2, 2});
    PropertyQuery q{Relation::Prefix, Mode::Convex, false, false};
    auto r = brute_force_minimal_witness(d, q, 8);
    REQUIRE(r.outcome == OracleOutcome::Found);
    // witnesses need v = b; the smallest container is w = ba, with u = eps.
    CHECK(r.witness->u->empty());
    CHECK(r.witness->v == Word{1});
    CHECK(r.witness->w == (Word{1, 0}));
}

TEST_CASE("every hard family fails exactly the property it stresses") {
    struct Row {
        const char* family;
        int n;
        Relation rel;
        Mode mode;
    };
    const Row rows[] = {
        {"xu-factor-closure", 4, Relation::Factor, Mode::Closed},
        {"nsc-suffix-convex", 3, Relation::Suffix, Mode::Convex},
        {"nsc-factor-convex", 3, Relation::Factor, Mode::Convex},
        {"factor-free-hard", 3, Relation::Factor, Mode::Free},
        {"suffix-free-hard", 3, Relation::Suffix, Mode::Free},
        {"unary-npc", 4, Relation::Prefix, Mode::Convex},
        {"unary-prefix-closed", 4, Relation::Prefix, Mode::Closed},
        {"unary-subword-closed", 4, Relation::Subword, Mode::Closed},
    };
    for (const Row& row : rows) {
        Dfa d = std::get<Dfa>(make_family({row.family, row.n}));
        CAPTURE(row.family);
        CHECK(!decide(d, {row.rel, row.mode, false, false}, false).holds());
    }
    // and the NFA row via the direct path
    Nfa m = std::get<Nfa>(make_family({"nfa-prefix-free-hard", 3}));
    CHECK(!nfa_is_free(m, Relation::Prefix).free);
}

TEST_CASE("decide vs oracle: unary and three-letter alphabets") {
    std::mt19937 rng(89);
    for (int sigma : {1, 3}) {
        for (int i = 0; i < 80; ++i) {
            Dfa d = random_complete_dfa(rng, 3, sigma);
            OracleLattice<DfaMachine> lat(d.alphabet, DfaMachine{&d});
            for (Relation r : kAllRelations)
                for (Mode m : kAllModes) {
                    PropertyQuery q{r, m, false, false};
                    Verdict v = decide(d, q);
                    int horizon = sigma == 1 ? 24 : 8;
                    auto orc = oracle_search(lat, q, horizon);
                    CAPTURE(sigma);
                    CAPTURE(property_name(q));
                    if (!v.holds() && static_cast<int>(v.witness->w.size()) <= horizon) {
                        REQUIRE(orc.outcome == OracleOutcome::Found);
                        CHECK(orc.witness->w == v.witness->w);
                        CHECK(orc.witness->v == v.witness->v);
                        CHECK(orc.witness->u == v.witness->u);
                    } else if (v.holds()) {
                        CHECK(orc.outcome == OracleOutcome::NoWitness);
                    }
                }
        }
    }
}

TEST_CASE("decide vs oracle: deeper binary DFAs") {
    std::mt19937 rng(97);
    for (int i = 0; i < 50; ++i) {
        Dfa d = random_complete_dfa(rng, 4, 2);
        OracleLattice<DfaMachine> lat(d.alphabet, DfaMachine{&d});
        for (Relation r : kAllRelations)
            for (Mode m : kAllModes) {
                PropertyQuery q{r, m, false, false};
                Verdict v = decide(d, q);
                auto orc = oracle_search(lat, q, 10);
                if (!v.holds() && static_cast<int>(v.witness->w.size()) <= 10) {
                    REQUIRE(orc.outcome == OracleOutcome::Found);
                    CHECK(orc.witness->w == v.witness->w);
                    CHECK(orc.witness->v == v.witness->v);
                } else if (v.holds()) {
                    CHECK(orc.outcome == OracleOutcome::NoWitness);
                }
            }
    }
}

TEST_CASE("degenerate languages: empty and {eps}") {
    // The empty language holds every property.
    Dfa none = make_dfa({"a", "b"}, 1, 0, {}, {0, 0});
    for (Relation r : kAllRelations)
        for (Mode m : kAllModes) {
            CHECK(decide(none, {r, m, false, false}, false).holds());
            CHECK(decide_almost(none, {r, m, false, true}) == AlmostVerdict::Holds);
        }
    // {eps} holds every property too (the sole word contains only itself).
    Dfa just_eps = make_dfa({"a", "b"}, 2, 0, {0}, {1, 1, 1, 1});
    for (Relation r : kAllRelations)
        for (Mode m : kAllModes)
            CHECK(decide(just_eps, {r, m, false, false}, false).holds());
    // but {eps} is converse-closed for no relation except... none: a in sigma
    // extends eps out of the language.
    for (Relation r : kAllRelations)
        CHECK(!decide(just_eps, {r, Mode::Closed, true, false}, false).holds());
}
