// families.hpp -- generators for the hard language families with pinned
// state counts; used to reproduce the tight witness-size bounds.

#pragma once

#include "convex/automata.hpp"
#include "convex/format.hpp"

namespace convex {

/// name: one of
///   xu-factor-closure    (alias "xu")   2n+4 states over {0,1}
///   nsc-suffix-convex                   3n+5 states over {a,b}
///   nsc-factor-convex                   3n+6 states (the same language with a b appended)
///   factor-free-hard                    2n+6 states
///   suffix-free-hard                    2n+5 states
///   unary-npc                           n states, a^{n-1}(a^n)*
///   unary-prefix-closed                 n states, (a^n)*
///   unary-subword-closed                n states, (a^n)*(eps+a+...+a^{n-2})
///   nfa-prefix-free-hard                O(n)-state NFA, reverse of suffix-free-hard
struct FamilySpec {
    std::string name;
    int n = 0;
};

namespace detail {

inline Dfa unary_cycle(int n, std::vector<int> accepting_ids) {
    Dfa d;
    d.alphabet = Alphabet::from_tokens({"a"});
    d.states = n;
    d.start = 0;
    d.accepting.assign(static_cast<size_t>(n), 0);
    for (int id : accepting_ids) d.accepting[static_cast<size_t>(id)] = 1;
    d.delta.assign(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s) d.delta[static_cast<size_t>(s)] = (s + 1) % n;
    return d;
}

inline Dfa xu_family(int n) {
    // States q_0..q_{n+1}, p_0..p_{n+1}; the only rejecting state is q_{n+1},
    // which is also the dead state.
    Dfa d;
    d.alphabet = Alphabet::from_tokens({"0", "1"});
    d.states = 2 * n + 4;
    d.start = 0;
    auto q = [](int i) { return i; };
    auto p = [n](int j) { return n + 2 + j; };
    d.accepting.assign(static_cast<size_t>(d.states), 1);
    d.accepting[static_cast<size_t>(q(n + 1))] = 0;
    d.delta.assign(static_cast<size_t>(d.states) * 2, -1);
    auto set = [&](int s, int sym, int t) { d.next_ref(s, sym) = t; };
    set(q(0), 0, q(0));
    set(q(0), 1, q(1));
    for (int i = 1; i <= n; ++i) {
        set(q(i), 0, i < n ? q(i + 1) : q(1));
        set(q(i), 1, i < n - 1 ? q(1) : (i == n - 1 ? p(0) : q(n + 1)));
    }
    set(q(n + 1), 0, q(n + 1));
    set(q(n + 1), 1, q(n + 1));
    // p_n loops back to p_0 on 0: the p part is a clean (n+1)-cycle, and the
    // only edges from p states into q states lead to the rejecting sink.
    for (int j = 0; j <= n; ++j) {
        set(p(j), 0, j < n ? p(j + 1) : p(0));
        set(p(j), 1, j < n ? q(n + 1) : p(n + 1));
    }
    set(p(n + 1), 0, q(n + 1));
    set(p(n + 1), 1, q(n + 1));
    d.check_valid();
    return d;
}

/// bbb(a^{n-1})+ | bb(a+...+a^{n-1})(a^n)* | b(a^{n+1})+, as a 3n+5 state DFA:
/// a chain of b's selects one of three a-cycles (lengths n+1, n, n-1).
inline Dfa nsc_family(int n) {
    Dfa d;
    d.alphabet = Alphabet::from_tokens({"a", "b"});
    int s = 0, b1 = 1, b2 = 2, b3 = 3;
    int e0 = 4;           // e_1..e_{n+1}
    int f0 = e0 + n + 1;  // f_1..f_n
    int g0 = f0 + n;      // g_1..g_{n-1}
    int dead = g0 + n - 1;
    d.states = dead + 1;  // == 3n+5
    d.start = s;
    d.accepting.assign(static_cast<size_t>(d.states), 0);
    d.accepting[static_cast<size_t>(e0 + n)] = 1;  // e_{n+1}: b a^k, (n+1)|k
    for (int k = 1; k <= n - 1; ++k) d.accepting[static_cast<size_t>(f0 + k - 1)] = 1;
    d.accepting[static_cast<size_t>(g0 + n - 2)] = 1;  // g_{n-1}: bbb a^k, (n-1)|k
    d.delta.assign(static_cast<size_t>(d.states) * 2, -1);
    const Sym A = 0, B = 1;
    auto set = [&](int from, Sym sym, int to) { d.next_ref(from, sym) = to; };
    set(s, A, dead);
    set(s, B, b1);
    set(b1, A, e0);
    set(b1, B, b2);
    set(b2, A, f0);
    set(b2, B, b3);
    set(b3, A, g0);
    set(b3, B, dead);
    for (int k = 0; k < n + 1; ++k) {
        set(e0 + k, A, k + 1 < n + 1 ? e0 + k + 1 : e0);
        set(e0 + k, B, dead);
    }
    for (int k = 0; k < n; ++k) {
        set(f0 + k, A, k + 1 < n ? f0 + k + 1 : f0);
        set(f0 + k, B, dead);
    }
    for (int k = 0; k < n - 1; ++k) {
        set(g0 + k, A, k + 1 < n - 1 ? g0 + k + 1 : g0);
        set(g0 + k, B, dead);
    }
    set(dead, A, dead);
    set(dead, B, dead);
    d.check_valid();
    return d;
}

/// The nsc language with a final b appended. Members of the base language
/// never continue inside it after accepting, so a single fresh final state
/// reached on b from the old accepting states suffices.
inline Dfa nsc_factor_family(int n) {
    Dfa base = nsc_family(n);
    Dfa d = base;
    int t = d.states;
    d.states += 1;
    d.delta.assign(static_cast<size_t>(d.states) * 2, -1);
    const Sym B = 1;
    int dead = base.states - 1;
    for (int st = 0; st < base.states; ++st)
        for (Sym a = 0; a < 2; ++a) d.next_ref(st, a) = base.next(st, a);
    for (int st = 0; st < base.states; ++st)
        if (base.is_accepting(st)) d.next_ref(st, B) = t;
    d.next_ref(t, 0) = dead;
    d.next_ref(t, 1) = dead;
    d.accepting.assign(static_cast<size_t>(d.states), 0);
    d.accepting[static_cast<size_t>(t)] = 1;
    d.check_valid();
    return d;
}

/// bb(a^n)+b | b(a^{n+1})+b with 2n+6 states, or the same without the final
/// b (bb(a^n)+ | b(a^{n+1})+) with 2n+5 states.
inline Dfa ab_pair_family(int n, bool final_b) {
    Dfa d;
    d.alphabet = Alphabet::from_tokens({"a", "b"});
    int s = 0, b1 = 1, b2 = 2;
    int t = final_b ? 3 : -1;
    int dead = final_b ? 4 : 3;
    int e0 = dead + 1;    // e_1..e_{n+1}: the b branch
    int f0 = e0 + n + 1;  // f_1..f_n: the bb branch
    d.states = f0 + n;    // 2n+6 with the final b, 2n+5 without
    d.start = s;
    d.accepting.assign(static_cast<size_t>(d.states), 0);
    if (final_b)
        d.accepting[static_cast<size_t>(t)] = 1;
    else {
        d.accepting[static_cast<size_t>(e0 + n)] = 1;
        d.accepting[static_cast<size_t>(f0 + n - 1)] = 1;
    }
    d.delta.assign(static_cast<size_t>(d.states) * 2, -1);
    const Sym A = 0, B = 1;
    auto set = [&](int from, Sym sym, int to) { d.next_ref(from, sym) = to; };
    set(s, A, dead);
    set(s, B, b1);
    set(b1, A, e0);
    set(b1, B, b2);
    set(b2, A, f0);
    set(b2, B, dead);
    for (int k = 0; k < n + 1; ++k) {
        set(e0 + k, A, k + 1 < n + 1 ? e0 + k + 1 : e0);
        set(e0 + k, B, final_b && k == n ? t : dead);
    }
    for (int k = 0; k < n; ++k) {
        set(f0 + k, A, k + 1 < n ? f0 + k + 1 : f0);
        set(f0 + k, B, final_b && k == n - 1 ? t : dead);
    }
    if (final_b) {
        set(t, A, dead);
        set(t, B, dead);
    }
    set(dead, A, dead);
    set(dead, B, dead);
    d.check_valid();
    return d;
}

}  // namespace detail

inline Automaton make_family(const FamilySpec& spec) {
    const std::string& f = spec.name;
    int n = spec.n;
    auto need = [&](int lo) {
        if (n < lo)
            throw std::invalid_argument("family '" + f + "' needs n >= " + std::to_string(lo));
    };
    if (f == "xu" || f == "xu-factor-closure") {
        need(2);
        return detail::xu_family(n);
    }
    if (f == "nsc-suffix-convex") {
        need(3);
        return detail::nsc_family(n);
    }
    if (f == "nsc-factor-convex") {
        need(3);
        return detail::nsc_factor_family(n);
    }
    if (f == "factor-free-hard") {
        need(2);
        return detail::ab_pair_family(n, true);
    }
    if (f == "suffix-free-hard") {
        need(2);
        return detail::ab_pair_family(n, false);
    }
    if (f == "unary-npc") {
        need(2);
        return detail::unary_cycle(n, {n - 1});
    }
    if (f == "unary-prefix-closed") {
        need(2);
        return detail::unary_cycle(n, {0});
    }
    if (f == "unary-subword-closed") {
        need(2);
        std::vector<int> acc;
        for (int i = 0; i <= n - 2; ++i) acc.push_back(i);
        return detail::unary_cycle(n, acc);
    }
    if (f == "nfa-prefix-free-hard") {
        need(2);
        Dfa base = detail::ab_pair_family(n, false);
        return remove_epsilon(reverse(to_nfa(base)));
    }
    throw std::invalid_argument("unknown family '" + f + "'");
}

inline const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {
        "xu-factor-closure", "nsc-suffix-convex",    "nsc-factor-convex",
        "factor-free-hard",  "suffix-free-hard",     "unary-npc",
        "unary-prefix-closed", "unary-subword-closed", "nfa-prefix-free-hard"};
    return names;
}

}  // namespace convex
