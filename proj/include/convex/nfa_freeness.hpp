// nfa_freeness.hpp -- freeness decisions directly on NFAs, without
// determinization: L is <=-free iff L meets the language of its strict
// <=-containers, so build that container automaton, intersect, and test
// emptiness. Runs in time quadratic in the input size.

#pragma once

#include "convex/relations.hpp"
#include "convex/witness.hpp"

namespace convex {

/// The three automata of a freeness check: the input, the automaton of its
/// strict containers under the relation, and their product.
struct FreenessConstruction {
    Nfa base;
    Nfa derived;
    Nfa product;
};

struct NfaFreeResult {
    bool free = false;
    std::optional<Witness> witness;  // (v, w), both accepted, v properly contained in w
    FreenessConstruction parts;
};

namespace detail {

/// L(m) Sigma^+: one fresh final sink reached from every old final state.
inline Nfa pad_right_plus(const Nfa& m) {
    Nfa out = m;
    int qf = out.states++;
    out.accepting.assign(static_cast<size_t>(out.states), 0);
    out.accepting[static_cast<size_t>(qf)] = 1;
    for (int s = 0; s < m.states; ++s)
        if (m.is_accepting(s))
            for (Sym a = 0; a < m.alphabet.size(); ++a) out.add(s, a, qf);
    for (Sym a = 0; a < m.alphabet.size(); ++a) out.add(qf, a, qf);
    out.normalize();
    return out;
}

/// Sigma^+ L(m): one fresh start that loops on the padding and hands over to
/// the old start while consuming the final padding symbol.
inline Nfa pad_left_plus(const Nfa& m) {
    Nfa out = m;
    int qs = out.states++;
    out.accepting.push_back(0);
    out.start = qs;
    for (Sym a = 0; a < m.alphabet.size(); ++a) {
        out.add(qs, a, qs);
        out.add(qs, a, m.start);
    }
    out.normalize();
    return out;
}

/// L(m) Sigma^*: like the plus variant but the sink also accepts.
inline Nfa pad_right_star(const Nfa& m) {
    Nfa out = pad_right_plus(m);
    for (int s = 0; s < m.states; ++s) out.accepting[static_cast<size_t>(s)] = m.accepting[static_cast<size_t>(s)];
    return out;
}

/// Sigma^* L(m): the fresh start additionally mirrors the old start.
inline Nfa pad_left_star(const Nfa& m) {
    Nfa out = pad_left_plus(m);
    int qs = out.start;
    TransIndex ix(m);
    for (int i = ix.first[static_cast<size_t>(m.start)]; i < ix.first[static_cast<size_t>(m.start) + 1]; ++i) {
        const Trans& t = m.transitions[static_cast<size_t>(i)];
        out.add(qs, t.label, t.dst);
    }
    if (m.is_accepting(m.start)) out.accepting[static_cast<size_t>(qs)] = 1;
    out.normalize();
    return out;
}

/// Union of two epsilon-free NFAs via a merged fresh start.
inline Nfa nfa_union_eps_free(const Nfa& x, const Nfa& y) {
    Nfa out;
    out.alphabet = x.alphabet;
    out.states = 1 + x.states + y.states;
    out.start = 0;
    out.accepting.assign(static_cast<size_t>(out.states), 0);
    int sx = 1, sy = 1 + x.states;
    for (int s = 0; s < x.states; ++s) out.accepting[static_cast<size_t>(s + sx)] = x.accepting[static_cast<size_t>(s)];
    for (int s = 0; s < y.states; ++s) out.accepting[static_cast<size_t>(s + sy)] = y.accepting[static_cast<size_t>(s)];
    for (const Trans& t : x.transitions) out.add(t.src + sx, t.label, t.dst + sx);
    for (const Trans& t : y.transitions) out.add(t.src + sy, t.label, t.dst + sy);
    for (const Trans& t : x.transitions)
        if (t.src == x.start) out.add(0, t.label, t.dst + sx);
    for (const Trans& t : y.transitions)
        if (t.src == y.start) out.add(0, t.label, t.dst + sy);
    if (x.is_accepting(x.start) || y.is_accepting(y.start)) out.accepting[0] = 1;
    out.normalize();
    return out;
}

/// Strict superwords of L(m): two copies of m; consuming a symbol may feed m
/// (either copy) or skip it (jumping to or staying in the second copy), and
/// acceptance requires the second copy, i.e. at least one skipped symbol.
inline Nfa strict_superword_automaton(const Nfa& m) {
    Nfa out;
    out.alphabet = m.alphabet;
    out.states = 2 * m.states;
    out.start = m.start;
    out.accepting.assign(static_cast<size_t>(out.states), 0);
    for (int s = 0; s < m.states; ++s)
        if (m.is_accepting(s)) out.accepting[static_cast<size_t>(s + m.states)] = 1;
    for (const Trans& t : m.transitions) {
        out.add(t.src, t.label, t.dst);
        out.add(t.src + m.states, t.label, t.dst + m.states);
    }
    for (int s = 0; s < m.states; ++s)
        for (Sym a = 0; a < m.alphabet.size(); ++a) {
            out.add(s, a, s + m.states);
            out.add(s + m.states, a, s + m.states);
        }
    out.normalize();
    return out;
}

// Minimal mask-stepping helper (subset simulation over <=64 states).
struct NfaMachineLike {
    uint64_t accept_mask = 0;
    int sigma = 0;
    uint64_t start_mask = 0;
    std::vector<uint64_t> step_mask;

    explicit NfaMachineLike(const Nfa& m) {
        sigma = m.alphabet.size();
        step_mask.assign(static_cast<size_t>(m.states) * sigma, 0);
        for (const Trans& t : m.transitions)
            if (t.label != kEpsilon)
                step_mask[static_cast<size_t>(t.src) * sigma + t.label] |= uint64_t{1} << t.dst;
        start_mask = uint64_t{1} << m.start;
        for (int s = 0; s < m.states; ++s)
            if (m.is_accepting(s)) accept_mask |= uint64_t{1} << s;
    }
    uint64_t init() const { return start_mask; }
    uint64_t step(uint64_t mask, Sym a) const {
        uint64_t out = 0;
        while (mask) {
            int b = __builtin_ctzll(mask);
            mask &= mask - 1;
            out |= step_mask[static_cast<size_t>(b) * sigma + a];
        }
        return out;
    }
    bool accept(uint64_t mask) const { return (mask & accept_mask) != 0; }
};

inline bool nfa_accepts_indexed(const Nfa& m, const TransIndex& ix, const Word& w) {
    std::vector<char> cur(static_cast<size_t>(m.states), 0);
    cur[static_cast<size_t>(m.start)] = 1;
    for (Sym a : w) {
        std::vector<char> nxt(static_cast<size_t>(m.states), 0);
        for (int s = 0; s < m.states; ++s) {
            if (!cur[static_cast<size_t>(s)]) continue;
            for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
                const Trans& t = m.transitions[static_cast<size_t>(i)];
                if (t.label == a) nxt[static_cast<size_t>(t.dst)] = 1;
            }
        }
        cur = std::move(nxt);
    }
    for (int s = 0; s < m.states; ++s)
        if (cur[static_cast<size_t>(s)] && m.is_accepting(s)) return true;
    return false;
}

/// Shortest contained word of w (under r) accepted by m, excluding w itself.
inline std::optional<Word> shortest_contained_member(const Nfa& m, Relation r, const Word& w) {
    TransIndex ix(m);
    int len = static_cast<int>(w.size());
    switch (r) {
        case Relation::Prefix:
            for (int j = 0; j < len; ++j) {
                Word v(w.begin(), w.begin() + j);
                if (nfa_accepts_indexed(m, ix, v)) return v;
            }
            return std::nullopt;
        case Relation::Suffix:
            for (int j = 0; j < len; ++j) {
                Word v(w.end() - j, w.end());
                if (nfa_accepts_indexed(m, ix, v)) return v;
            }
            return std::nullopt;
        case Relation::Factor:
            for (int j = 0; j < len; ++j)
                for (int i = 0; i + j <= len; ++i) {
                    Word v(w.begin() + i, w.begin() + i + j);
                    if (nfa_accepts_indexed(m, ix, v)) return v;
                }
            return std::nullopt;
        case Relation::Subword: {
            // DP over (position, subset mask): fewest symbols fed to m such
            // that the rest of w is skipped and m accepts.
            if (m.states > 64)
                throw std::invalid_argument("subword witness recovery supports up to 64 NFA states");
            NfaMachineLike mm(m);
            std::vector<std::unordered_map<uint64_t, int>> dp(static_cast<size_t>(len) + 1);
            dp[0][mm.init()] = 0;
            for (int pos = 0; pos < len; ++pos)
                for (auto [mask, c] : dp[static_cast<size_t>(pos)]) {
                    auto relax = [&](uint64_t nm, int nc) {
                        auto it = dp[static_cast<size_t>(pos) + 1].find(nm);
                        if (it == dp[static_cast<size_t>(pos) + 1].end() || nc < it->second)
                            dp[static_cast<size_t>(pos) + 1][nm] = nc;
                    };
                    relax(mask, c);                                // skip w[pos]
                    relax(mm.step(mask, w[static_cast<size_t>(pos)]), c + 1);  // feed it
                }
            int best = len;  // must stay strictly below |w|
            for (auto [mask, c] : dp[static_cast<size_t>(len)])
                if (mm.accept(mask) && c < best) best = c;
            if (best == len) return std::nullopt;
            // Reconstruct one optimal subsequence, preferring to skip.
            std::vector<std::unordered_map<uint64_t, int>> back(static_cast<size_t>(len) + 1);
            back[static_cast<size_t>(len)] = {};
            // Backward feasibility: g[pos][mask] = min further feeds to accept.
            std::vector<std::unordered_map<uint64_t, int>> g(static_cast<size_t>(len) + 1);
            for (auto [mask, c] : dp[static_cast<size_t>(len)])
                if (mm.accept(mask)) g[static_cast<size_t>(len)][mask] = 0;
            for (int pos = len - 1; pos >= 0; --pos)
                for (auto [mask, c] : dp[static_cast<size_t>(pos)]) {
                    int bestg = -1;
                    auto consider = [&](uint64_t nm, int extra) {
                        auto it = g[static_cast<size_t>(pos) + 1].find(nm);
                        if (it != g[static_cast<size_t>(pos) + 1].end() &&
                            (bestg < 0 || it->second + extra < bestg))
                            bestg = it->second + extra;
                    };
                    consider(mask, 0);
                    consider(mm.step(mask, w[static_cast<size_t>(pos)]), 1);
                    if (bestg >= 0) g[static_cast<size_t>(pos)][mask] = bestg;
                }
            Word v;
            uint64_t mask = mm.init();
            int remaining = best;
            for (int pos = 0; pos < len; ++pos) {
                auto skip_it = g[static_cast<size_t>(pos) + 1].find(mask);
                if (skip_it != g[static_cast<size_t>(pos) + 1].end() && skip_it->second == remaining)
                    continue;  // skipping keeps the optimum
                v.push_back(w[static_cast<size_t>(pos)]);
                mask = mm.step(mask, w[static_cast<size_t>(pos)]);
                --remaining;
            }
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Builds the strict-container automaton for r over an epsilon-free m.
inline Nfa strict_container_automaton(const Nfa& m, Relation r) {
    if (m.has_epsilon()) throw std::invalid_argument("requires an epsilon-free NFA (remove epsilons first)");
    switch (r) {
        case Relation::Prefix: return detail::pad_right_plus(m);
        case Relation::Suffix: return detail::pad_left_plus(m);
        case Relation::Factor:
            return detail::nfa_union_eps_free(detail::pad_left_plus(detail::pad_right_star(m)),
                                              detail::pad_right_plus(detail::pad_left_star(m)));
        case Relation::Subword: return detail::strict_superword_automaton(m);
    }
    throw std::logic_error("unreachable");
}

/// Decides whether L(m) is r-free. On failure the witness pair (v, w) is
/// recovered from the shortest accepted word of the product: w itself, and
/// the shortest word of L(m) properly contained in it.
inline NfaFreeResult nfa_is_free(const Nfa& m, Relation r) {
    if (m.has_epsilon()) throw std::invalid_argument("requires an epsilon-free NFA (remove epsilons first)");
    NfaFreeResult res;
    res.parts.base = m;
    res.parts.derived = strict_container_automaton(m, r);
    res.parts.product = intersect(m, res.parts.derived);
    if (is_empty(res.parts.product)) {
        res.free = true;
        return res;
    }
    res.free = false;
    auto w = shortest_accepted(res.parts.product);
    if (!w) throw std::logic_error("nonempty product without a shortest word");
    auto v = detail::shortest_contained_member(m, r, *w);
    if (!v) throw std::logic_error("container word without a contained member");
    Witness wit;
    wit.w = *w;
    wit.v = *v;
    attach_decomposition(r, wit);
    res.witness = std::move(wit);
    return res;
}

}  // namespace convex
