// decide.hpp -- decision procedures over the checkers: the twelve
// properties, the ideal test, and the almost variants.

#pragma once

#include "convex/witness.hpp"

namespace convex {

struct CheckerStats {
    long long formula_states = 0;       // closed-form full-layout size
    long long formula_transitions = 0;
    long long reachable_states = 0;     // materialized by the decision
    long long reachable_transitions = 0;
};

enum class Outcome { Holds, Fails, ResourceLimitHit };

struct Verdict {
    Outcome outcome = Outcome::Holds;
    std::optional<Witness> witness;
    CheckerStats stats;

    bool holds() const { return outcome == Outcome::Holds; }
};

/// Decides q for the complete DFA d. The property holds iff the checker's
/// language is empty; on failure a minimal witness is attached (unless
/// want_witness is cleared). A blown state cap reports ResourceLimitHit.
inline Verdict decide(const Dfa& d, PropertyQuery q, bool want_witness = true,
                      long long state_cap = kDefaultCheckerCap) {
    q.check_valid();
    if (q.almost) throw std::invalid_argument("use decide_almost for almost variants");
    Verdict out;
    CheckerSize fs = checker_size_formula(d.states, d.alphabet.size(), q.relation, q.mode);
    out.stats.formula_states = fs.states;
    out.stats.formula_transitions = fs.transitions;
    try {
        Checker ck = build_checker(d, q, Layout::Reachable, state_cap);
        out.stats.reachable_states = ck.nfa.states;
        out.stats.reachable_transitions = static_cast<long long>(ck.nfa.transitions.size());
        if (is_empty(ck.nfa)) {
            out.outcome = Outcome::Holds;
            return out;
        }
        out.outcome = Outcome::Fails;
        if (want_witness) out.witness = minimal_witness(d, q, state_cap);
    } catch (const ResourceLimit&) {
        out.outcome = Outcome::ResourceLimitHit;
    }
    return out;
}

/// True iff L(d) is an ideal, i.e. converse-factor-closed, i.e. the
/// complement is factor-closed.
inline bool decide_ideal(const Dfa& d, long long state_cap = kDefaultCheckerCap) {
    PropertyQuery q{Relation::Factor, Mode::Closed, /*converse=*/true, /*almost=*/false};
    Checker ck = build_checker(d, q, Layout::Reachable, state_cap);
    return is_empty(ck.nfa);
}

enum class AlmostVerdict { Holds, Almost, NotAlmost };

inline const char* to_string(AlmostVerdict v) {
    switch (v) {
        case AlmostVerdict::Holds: return "holds";
        case AlmostVerdict::Almost: return "almost";
        case AlmostVerdict::NotAlmost: return "not-almost";
    }
    return "?";
}

/// Almost-q: the property fails, but with only finitely many witnesses.
/// Since |u| and |v| are bounded by |w| and each outer word has finitely
/// many decompositions, the witness set is finite exactly when the checker's
/// language is; infiniteness is decided on the trimmed checker with the
/// epsilon-cycle-aware test.
inline AlmostVerdict decide_almost(const Dfa& d, PropertyQuery q,
                                   long long state_cap = kDefaultCheckerCap) {
    q.check_valid();
    Checker ck = build_checker(d, q, Layout::Reachable, state_cap);
    if (is_empty(ck.nfa)) return AlmostVerdict::Holds;
    return is_language_infinite(ck.nfa) ? AlmostVerdict::NotAlmost : AlmostVerdict::Almost;
}

}  // namespace convex
