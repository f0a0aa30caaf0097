// witness.hpp -- minimal witness extraction and independent verification.
//
// A witness is minimal under the length triple (|w|, |v|, |u|) compared
// lexicographically; ties are broken by word order on w, then v, then u,
// under the declared alphabet order. Extraction runs a label-setting
// shortest-path search over the checker automaton, where a consumed symbol
// costs (1, m_v, m_u) according to which tracked runs include it, and label
// comparison is lexicographic. All edge costs are componentwise
// non-negative, so the search is exact.

#pragma once

#include <queue>

#include "convex/checker.hpp"
#include "convex/relations.hpp"

namespace convex {

/// Upper bound on |w| of a minimal witness against (relation, mode) for a
/// language accepted by a complete DFA with n states.
inline long long witness_bound(long long n, Relation r, Mode m) {
    if (n < 1) throw std::invalid_argument("witness_bound needs n >= 1");
    long long n2 = n * n, n3 = n * n * n;
    switch (r) {
        case Relation::Factor:
        case Relation::Suffix:
            return m == Mode::Convex ? 3 * n3 + n2 + n - 1 : 2 * n2 + n - 1;
        case Relation::Prefix:
            return m == Mode::Closed ? n : 2 * n - 1;
        case Relation::Subword:
            switch (m) {
                case Mode::Convex: return 3 * n - 2;
                case Mode::Closed: return n;
                case Mode::Free: return 2 * n - 1;
            }
    }
    return 0;
}

namespace detail {

// Labels store the three accumulated words with one byte per symbol id.
struct SearchLabel {
    std::string w, v, u;
};

inline bool label_less(const SearchLabel& a, const SearchLabel& b) {
    if (a.w.size() != b.w.size()) return a.w.size() < b.w.size();
    if (a.v.size() != b.v.size()) return a.v.size() < b.v.size();
    if (a.u.size() != b.u.size()) return a.u.size() < b.u.size();
    if (a.w != b.w) return a.w < b.w;
    if (a.v != b.v) return a.v < b.v;
    return a.u < b.u;
}

inline Word bytes_to_word(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) w.push_back(static_cast<Sym>(static_cast<unsigned char>(c)));
    return w;
}

}  // namespace detail

/// Fills in the leftmost-embedding positions for v (and u) inside w.
inline void attach_decomposition(Relation r, Witness& cand) {
    cand.v_positions = leftmost_embedding(r, cand.v, cand.w);
    cand.u_positions.clear();
    if (cand.u) {
        std::vector<int> in_v = leftmost_embedding(r, *cand.u, cand.v);
        for (int i : in_v) cand.u_positions.push_back(cand.v_positions[static_cast<size_t>(i)]);
    }
}

/// Minimal witness against q, or nullopt when the property holds.
inline std::optional<Witness> minimal_witness(const Dfa& d, PropertyQuery q,
                                              long long state_cap = kDefaultCheckerCap) {
    q.check_valid();
    if (d.alphabet.size() > 250) throw std::invalid_argument("alphabet too large for witness search");
    Checker ck = build_checker(d, q, Layout::Reachable, state_cap);
    const Nfa& m = ck.nfa;

    using detail::SearchLabel;
    struct Entry {
        SearchLabel lab;
        int state;
    };
    auto entry_after = [](const Entry& a, const Entry& b) {
        if (detail::label_less(a.lab, b.lab)) return false;
        if (detail::label_less(b.lab, a.lab)) return true;
        return a.state > b.state;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(entry_after)> pq(entry_after);
    std::vector<std::optional<SearchLabel>> best(static_cast<size_t>(m.states));
    std::vector<char> settled(static_cast<size_t>(m.states), 0);

    // The checker's transition list is sorted by source; index it once.
    TransIndex ix(m);

    best[static_cast<size_t>(m.start)] = SearchLabel{};
    pq.push({SearchLabel{}, m.start});
    while (!pq.empty()) {
        Entry e = pq.top();
        pq.pop();
        int s = e.state;
        if (settled[static_cast<size_t>(s)]) continue;
        if (best[static_cast<size_t>(s)] && detail::label_less(*best[static_cast<size_t>(s)], e.lab)) continue;
        settled[static_cast<size_t>(s)] = 1;
        if (m.is_accepting(s)) {
            Witness out;
            out.w = detail::bytes_to_word(e.lab.w);
            out.v = detail::bytes_to_word(e.lab.v);
            if (q.mode == Mode::Convex) out.u = detail::bytes_to_word(e.lab.u);
            attach_decomposition(q.relation, out);
            return out;
        }
        for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
            const Trans& t = m.transitions[static_cast<size_t>(i)];
            SearchLabel nl = e.lab;
            if (t.label != kEpsilon) {
                uint8_t adv = ck.advance[static_cast<size_t>(i)];
                nl.w.push_back(static_cast<char>(t.label));
                if (adv & 0b01) nl.v.push_back(static_cast<char>(t.label));
                if (adv & 0b10) nl.u.push_back(static_cast<char>(t.label));
            }
            auto& slot = best[static_cast<size_t>(t.dst)];
            if (!slot || detail::label_less(nl, *slot)) {
                slot = nl;
                pq.push({std::move(nl), t.dst});
            }
        }
    }
    return std::nullopt;
}

/// Independent check of a candidate witness against the definitions: direct
/// DFA runs for membership, direct relation predicates for containment, and
/// consistency of the attached decomposition. Never consults the checker.
inline bool verify_witness(const Dfa& d, PropertyQuery q, const Witness& cand) {
    q.check_valid();
    if (!relation_holds(q.relation, cand.v, cand.w)) return false;
    bool v_in = d.accepts(cand.v), w_in = d.accepts(cand.w);
    switch (q.mode) {
        case Mode::Convex: {
            if (!cand.u) return false;
            if (!relation_holds(q.relation, *cand.u, cand.v)) return false;
            if (!d.accepts(*cand.u) || v_in || !w_in) return false;
            break;
        }
        case Mode::Closed: {
            if (cand.u) return false;
            if (q.converse) {
                // v stayed in the language, some container w fell out.
                if (!v_in || w_in) return false;
            } else {
                if (v_in || !w_in) return false;
            }
            break;
        }
        case Mode::Free: {
            if (cand.u) return false;
            if (cand.v == cand.w) return false;
            if (!v_in || !w_in) return false;
            break;
        }
    }
    // Decomposition consistency, when one is attached.
    if (!cand.v_positions.empty()) {
        if (cand.v_positions.size() != cand.v.size()) return false;
        int prev = -1;
        for (size_t i = 0; i < cand.v_positions.size(); ++i) {
            int p = cand.v_positions[i];
            if (p <= prev || p >= static_cast<int>(cand.w.size())) return false;
            if (cand.w[static_cast<size_t>(p)] != cand.v[i]) return false;
            prev = p;
        }
        if (q.relation != Relation::Subword && !cand.v_positions.empty()) {
            // Contiguous relations embed as one block.
            if (cand.v_positions.back() - cand.v_positions.front() + 1 !=
                static_cast<int>(cand.v.size()))
                return false;
            if (q.relation == Relation::Prefix && cand.v_positions.front() != 0) return false;
            if (q.relation == Relation::Suffix &&
                cand.v_positions.back() != static_cast<int>(cand.w.size()) - 1)
                return false;
        }
    }
    if (cand.u && !cand.u_positions.empty()) {
        if (cand.u_positions.size() != cand.u->size()) return false;
        if (cand.v_positions.empty()) return false;
        // u's positions must be a subset of v's, in order.
        size_t vi = 0;
        for (size_t i = 0; i < cand.u_positions.size(); ++i) {
            int p = cand.u_positions[i];
            while (vi < cand.v_positions.size() && cand.v_positions[vi] < p) ++vi;
            if (vi >= cand.v_positions.size() || cand.v_positions[vi] != p) return false;
            if (cand.w[static_cast<size_t>(p)] != (*cand.u)[i]) return false;
            ++vi;
        }
        if (q.relation != Relation::Subword && !cand.u_positions.empty()) {
            if (cand.u_positions.back() - cand.u_positions.front() + 1 !=
                static_cast<int>(cand.u->size()))
                return false;
            if (q.relation == Relation::Prefix && cand.u_positions.front() != 0) return false;
            if (q.relation == Relation::Suffix &&
                cand.u_positions.back() != static_cast<int>(cand.w.size()) - 1)
                return false;
        }
    }
    return true;
}

}  // namespace convex
