#include <doctest.h>

#include "convex/cfg.hpp"
#include "testutil.hpp"

using namespace convex;
using namespace testutil;

TEST_CASE("cfg_reduce: non-generating, unreachable, already reduced") {
    Cfg g = parse_cfg("S -> a S");  // no base case
    Cfg r = cfg_reduce(g);
    CHECK(r.productions.empty());

    g = parse_cfg("S -> a | b\nX -> c");
    r = cfg_reduce(g);
    CHECK(r.nonterminals == std::vector<std::string>{"S"});
    CHECK(r.productions.size() == 2);

    g = parse_cfg("S -> a S b | eps");
    r = cfg_reduce(g);
    CHECK(r.productions.size() == 2);
    CHECK(r.nonterminals == std::vector<std::string>{"S"});
}

TEST_CASE("cfg_is_infinite: pumping pairs and finite languages") {
    CHECK(cfg_is_infinite(parse_cfg("S -> a S b | eps")));
    CHECK(!cfg_is_infinite(parse_cfg("S -> a | b")));
    CHECK(!cfg_is_infinite(parse_cfg("S -> A B\nA -> a\nB -> b | eps")));
    // unit cycles and nullable chains must not look infinite
    CHECK(!cfg_is_infinite(parse_cfg("S -> A\nA -> S | a")));
    CHECK(!cfg_is_infinite(parse_cfg("S -> A S | b\nA -> eps")));
    // and genuinely infinite grammars through a unit hop still do
    CHECK(cfg_is_infinite(parse_cfg("S -> A\nA -> a A | a")));
    // infinite but empty-language grammars are finite
    CHECK(!cfg_is_infinite(parse_cfg("S -> a S")));
}

TEST_CASE("cfg_enumerate: small finite languages, length-lex order") {
    Cfg g = parse_cfg("S -> A B\nA -> a | eps\nB -> b | eps");
    auto lang = cfg_enumerate(g);
    REQUIRE(lang.size() == 4);
    CHECK(lang[0] == Word{});
    Alphabet t = g.terminal_alphabet();
    CHECK(render_word(t, lang[1]) == "a");
    CHECK(render_word(t, lang[2]) == "b");
    CHECK(render_word(t, lang[3]) == "ab");
}

TEST_CASE("cfg_is_subword_free: the three canonical cases") {
    auto r1 = cfg_is_subword_free(parse_cfg("S -> a S b | a b"));
    CHECK(!r1.subword_free);
    CHECK(r1.infinite);

    auto r2 = cfg_is_subword_free(parse_cfg("S -> a b | b a"));
    CHECK(r2.subword_free);
    CHECK(!r2.infinite);

    Cfg g3 = parse_cfg("S -> a | a b a");
    auto r3 = cfg_is_subword_free(g3);
    CHECK(!r3.subword_free);
    CHECK(!r3.infinite);
    REQUIRE(r3.witness.has_value());
    Alphabet t = g3.terminal_alphabet();
    CHECK(render_word(t, r3.witness->first) == "a");
    CHECK(render_word(t, r3.witness->second) == "aba");
}

TEST_CASE("cfg_is_subword_free: empty and epsilon-only languages are free") {
    CHECK(cfg_is_subword_free(parse_cfg("S -> a S")).subword_free);
    CHECK(cfg_is_subword_free(parse_cfg("S -> eps")).subword_free);
}

TEST_CASE("reduction preserves membership on random small grammars") {
    // CYK over the original grammar vs. enumeration of the reduced one.
    std::mt19937 rng(71);
    std::uniform_int_distribution<int> coin(0, 1), term(0, 1), nt(0, 2), len(0, 3);
    for (int iter = 0; iter < 60; ++iter) {
        // 3 nonterminals S,A,B over terminals {a,b}, random short bodies.
        std::ostringstream text;
        const char* names[3] = {"S", "A", "B"};
        for (int h = 0; h < 3; ++h) {
            text << names[h] << " ->";
            int alts = 1 + coin(rng);
            for (int alt = 0; alt < alts; ++alt) {
                if (alt) text << " |";
                int L = len(rng);
                if (L == 0) text << " eps";
                for (int k = 0; k < L; ++k) {
                    if (coin(rng))
                        text << ' ' << static_cast<char>('a' + term(rng));
                    else
                        text << ' ' << names[nt(rng)];
                }
            }
            text << '\n';
        }
        Cfg g = parse_cfg(text.str());
        if (cfg_is_infinite(g)) continue;
        std::vector<Word> lang;
        try {
            lang = cfg_enumerate(g, {20000, 64});
        } catch (const ResourceLimit&) {
            continue;
        }
        Cfg red = cfg_reduce(g);
        std::vector<Word> lang2 = cfg_enumerate(red, {20000, 64});
        CHECK(lang == lang2);
    }
}

TEST_CASE("finite subword-freeness agrees with a direct pairwise check") {
    std::mt19937 rng(73);
    std::uniform_int_distribution<int> coin(0, 1), term(0, 1), len(1, 4);
    for (int iter = 0; iter < 40; ++iter) {
        // A random finite language given as alternatives of literals.
        std::ostringstream text;
        text << "S ->";
        int alts = 1 + coin(rng) + coin(rng);
        for (int alt = 0; alt < alts; ++alt) {
            if (alt) text << " |";
            int L = len(rng);
            for (int k = 0; k < L; ++k) text << ' ' << static_cast<char>('a' + term(rng));
        }
        Cfg g = parse_cfg(text.str());
        auto lang = cfg_enumerate(g);
        bool expect = true;
        for (const Word& v : lang)
            for (const Word& w : lang)
                if (v.size() < w.size() && is_subword_of(v, w)) expect = false;
        CHECK(cfg_is_subword_free(g).subword_free == expect);
    }
}

TEST_CASE("cfg parse errors") {
    CHECK_THROWS_AS(parse_cfg("S a b"), ParseError);
    CHECK_THROWS_AS(parse_cfg("s -> a"), ParseError);
    CHECK_THROWS_AS(parse_cfg(""), ParseError);
}

TEST_CASE("cfg: repeated heads accumulate alternatives") {
    Cfg g = parse_cfg("S -> a\nS -> b b");
    auto lang = cfg_enumerate(g);
    REQUIRE(lang.size() == 2);
    CHECK(lang[0].size() == 1);
    CHECK(lang[1].size() == 2);
}

namespace {

// Test-side derivability oracle: bottom-up fixpoint over spans, straight off
// the productions (no normal form needed; cycles converge monotonically).
bool derives_word(const Cfg& g, const Word& w) {
    int len = static_cast<int>(w.size());
    size_t nn = g.nonterminals.size();
    auto idx = [&](int a, int i, int j) {
        return (static_cast<size_t>(a) * (len + 1) + static_cast<size_t>(i)) * (len + 1) +
               static_cast<size_t>(j);
    };
    std::vector<char> nt(nn * static_cast<size_t>(len + 1) * (len + 1), 0);

    // seq[k][i][j]: body suffix from k derives w[i..j) under the current table
    auto seq_derives = [&](const std::vector<Cfg::SymRef>& body, int i, int j) {
        std::vector<std::vector<char>> reach(body.size() + 1,
                                             std::vector<char>(static_cast<size_t>(len) + 1, 0));
        reach[0][static_cast<size_t>(i)] = 1;
        for (size_t k = 0; k < body.size(); ++k)
            for (int p = i; p <= j; ++p) {
                if (!reach[k][static_cast<size_t>(p)]) continue;
                const Cfg::SymRef& s = body[k];
                if (s.terminal) {
                    if (p < j && w[static_cast<size_t>(p)] == s.idx)
                        reach[k + 1][static_cast<size_t>(p) + 1] = 1;
                } else {
                    for (int q = p; q <= j; ++q)
                        if (nt[idx(s.idx, p, q)]) reach[k + 1][static_cast<size_t>(q)] = 1;
                }
            }
        return reach[body.size()][static_cast<size_t>(j)] != 0;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions)
            for (int i = 0; i <= len; ++i)
                for (int j = i; j <= len; ++j) {
                    if (nt[idx(p.head, i, j)]) continue;
                    if (seq_derives(p.body, i, j)) {
                        nt[idx(p.head, i, j)] = 1;
                        changed = true;
                    }
                }
    }
    return nt[idx(g.start, 0, len)] != 0;
}

}  // namespace

TEST_CASE("reduction preserves membership against a span-parsing oracle") {
    std::mt19937 rng(107);
    std::uniform_int_distribution<int> coin(0, 1), term(0, 1), nt(0, 2), len(0, 3);
    auto words = all_words(2, 6);
    int grammars_checked = 0;
    for (int iter = 0; iter < 40; ++iter) {
        std::ostringstream text;
        const char* names[3] = {"S", "A", "B"};
        for (int h = 0; h < 3; ++h) {
            text << names[h] << " ->";
            int alts = 1 + coin(rng);
            for (int alt = 0; alt < alts; ++alt) {
                if (alt) text << " |";
                int L = len(rng);
                if (L == 0) text << " eps";
                for (int k = 0; k < L; ++k) {
                    if (coin(rng))
                        text << ' ' << static_cast<char>('a' + term(rng));
                    else
                        text << ' ' << names[nt(rng)];
                }
            }
            text << '\n';
        }
        Cfg g = parse_cfg(text.str());
        Cfg red = cfg_reduce(g);
        ++grammars_checked;
        for (const Word& w : words) {
            bool orig = derives_word(g, w);
            bool reduced = !red.productions.empty() && derives_word(red, w);
            CAPTURE(text.str());
            CHECK(orig == reduced);
        }
    }
    CHECK(grammars_checked == 40);
}
