// build.hpp -- minimal literal/union/concat/star/plus combinators producing
// NFA-epsilon values. Input plumbing for language definitions in tests; not a
// regular-expression engine.

#pragma once

#include "convex/automata.hpp"

namespace convex {

inline Nfa nfa_literal(const Alphabet& a, const Word& w) {
    Nfa m;
    m.alphabet = a;
    m.states = static_cast<int>(w.size()) + 1;
    m.start = 0;
    m.accepting.assign(static_cast<size_t>(m.states), 0);
    m.accepting.back() = 1;
    for (size_t i = 0; i < w.size(); ++i) m.add(static_cast<int>(i), w[i], static_cast<int>(i) + 1);
    m.normalize();
    return m;
}

namespace detail {
/// Copies m into out with all state ids shifted; returns the shift.
inline int append_states(Nfa& out, const Nfa& m) {
    int shift = out.states;
    out.states += m.states;
    out.accepting.insert(out.accepting.end(), m.accepting.begin(), m.accepting.end());
    for (const Trans& t : m.transitions) out.add(t.src + shift, t.label, t.dst + shift);
    return shift;
}
}  // namespace detail

inline Nfa nfa_union(const Nfa& x, const Nfa& y) {
    if (x.alphabet != y.alphabet) throw std::invalid_argument("alphabet mismatch");
    Nfa out;
    out.alphabet = x.alphabet;
    out.states = 1;
    out.start = 0;
    out.accepting.assign(1, 0);
    int sx = detail::append_states(out, x);
    int sy = detail::append_states(out, y);
    out.add(0, kEpsilon, x.start + sx);
    out.add(0, kEpsilon, y.start + sy);
    out.normalize();
    return out;
}

inline Nfa nfa_concat(const Nfa& x, const Nfa& y) {
    if (x.alphabet != y.alphabet) throw std::invalid_argument("alphabet mismatch");
    Nfa out;
    out.alphabet = x.alphabet;
    int sx = detail::append_states(out, x);
    int sy = detail::append_states(out, y);
    out.start = x.start + sx;
    for (int s = 0; s < x.states; ++s)
        if (x.is_accepting(s)) {
            out.accepting[static_cast<size_t>(s + sx)] = 0;
            out.add(s + sx, kEpsilon, y.start + sy);
        }
    out.normalize();
    return out;
}

inline Nfa nfa_star(const Nfa& x) {
    Nfa out;
    out.alphabet = x.alphabet;
    out.states = 1;
    out.start = 0;
    out.accepting.assign(1, 1);
    int sx = detail::append_states(out, x);
    out.add(0, kEpsilon, x.start + sx);
    for (int s = 0; s < x.states; ++s)
        if (x.is_accepting(s)) out.add(s + sx, kEpsilon, 0);
    out.normalize();
    return out;
}

inline Nfa nfa_plus(const Nfa& x) { return nfa_concat(x, nfa_star(x)); }

}  // namespace convex
