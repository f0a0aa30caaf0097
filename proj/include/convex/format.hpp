// format.hpp -- the line-oriented automaton file format, plus DOT export.
//
// Format (UTF-8, '#' starts a comment, blank lines ignored):
//   type: dfa | nfa
//   alphabet: tok tok ...        # order defines the lexicographic order
//   states: N                    # ids 0..N-1
//   start: id
//   accept: id id ...            # possibly empty
//   complete                     # dfa only: route missing edges to a dead state
//   src tok dst                  # transition; tok 'eps' is epsilon (nfa only)

#pragma once

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "convex/automata.hpp"

namespace convex {

using Automaton = std::variant<Dfa, Nfa>;

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline int parse_int(const std::string& tok, int line, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

}  // namespace detail

inline Automaton parse_automaton(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    bool is_dfa = false, saw_type = false, saw_alphabet = false, saw_states = false,
         saw_start = false, saw_accept = false, complete_directive = false;
    Alphabet alphabet;
    int states = 0, start = 0;
    std::vector<char> accepting;
    std::vector<int> delta;            // dfa
    std::vector<int> delta_line;       // dfa: line that defined each cell
    std::vector<Trans> transitions;    // nfa

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto toks = detail::split_ws(raw);
        if (toks.empty()) continue;

        if (!saw_type) {
            if (toks.size() != 2 || toks[0] != "type:" || (toks[1] != "dfa" && toks[1] != "nfa"))
                throw ParseError(lineno, "expected 'type: dfa' or 'type: nfa'");
            is_dfa = toks[1] == "dfa";
            saw_type = true;
            continue;
        }
        if (toks[0] == "alphabet:") {
            if (saw_alphabet) throw ParseError(lineno, "duplicate alphabet line");
            if (toks.size() < 2) throw ParseError(lineno, "alphabet needs at least one token");
            try {
                for (size_t i = 1; i < toks.size(); ++i) alphabet.add(toks[i]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
            saw_alphabet = true;
            continue;
        }
        if (toks[0] == "states:") {
            if (toks.size() != 2) throw ParseError(lineno, "states line needs one count");
            states = detail::parse_int(toks[1], lineno, "state count");
            if (states < 1) throw ParseError(lineno, "state count must be at least 1");
            saw_states = true;
            continue;
        }
        if (toks[0] == "start:") {
            if (toks.size() != 2) throw ParseError(lineno, "start line needs one id");
            start = detail::parse_int(toks[1], lineno, "state id");
            saw_start = true;
            continue;
        }
        if (toks[0] == "accept:") {
            if (saw_accept) throw ParseError(lineno, "duplicate accept line");
            if (!saw_states) throw ParseError(lineno, "accept line before states line");
            accepting.assign(static_cast<size_t>(states), 0);
            for (size_t i = 1; i < toks.size(); ++i) {
                int id = detail::parse_int(toks[i], lineno, "state id");
                if (id < 0 || id >= states) throw ParseError(lineno, "accept id out of range");
                accepting[static_cast<size_t>(id)] = 1;
            }
            saw_accept = true;
            continue;
        }
        if (toks[0] == "complete") {
            if (toks.size() != 1) throw ParseError(lineno, "unexpected tokens after 'complete'");
            if (!is_dfa) throw ParseError(lineno, "'complete' applies to dfa only");
            complete_directive = true;
            continue;
        }

        // Transition line.
        if (toks.size() != 3) throw ParseError(lineno, "expected 'src tok dst'");
        if (!saw_alphabet || !saw_states) throw ParseError(lineno, "transition before alphabet/states lines");
        int src = detail::parse_int(toks[0], lineno, "state id");
        int dst = detail::parse_int(toks[2], lineno, "state id");
        if (src < 0 || src >= states || dst < 0 || dst >= states)
            throw ParseError(lineno, "transition state id out of range");
        Sym label;
        if (toks[1] == "eps") {
            if (is_dfa) throw ParseError(lineno, "eps not allowed in dfa");
            label = kEpsilon;
        } else {
            auto idx = alphabet.index_of(toks[1]);
            if (!idx) throw ParseError(lineno, "undeclared symbol '" + toks[1] + "'");
            label = *idx;
        }
        if (is_dfa) {
            if (delta.empty()) {
                delta.assign(static_cast<size_t>(states) * alphabet.size(), -1);
                delta_line.assign(delta.size(), 0);
            }
            size_t cell = static_cast<size_t>(src) * alphabet.size() + label;
            if (delta[cell] >= 0)
                throw ParseError(lineno, "duplicate dfa transition for state " + toks[0] + " on '" +
                                             toks[1] + "' (first at line " +
                                             std::to_string(delta_line[cell]) + ")");
            delta[cell] = dst;
            delta_line[cell] = lineno;
        } else {
            transitions.push_back({src, label, dst});
        }
    }

    if (!saw_type) throw ParseError(0, "missing 'type:' line");
    if (!saw_alphabet) throw ParseError(0, "missing 'alphabet:' line");
    if (!saw_states) throw ParseError(0, "missing 'states:' line");
    if (!saw_start) throw ParseError(0, "missing 'start:' line");
    if (!saw_accept) throw ParseError(0, "missing 'accept:' line");
    if (start < 0 || start >= states) throw ParseError(0, "start id out of range");

    if (is_dfa) {
        Dfa d;
        d.alphabet = alphabet;
        d.states = states;
        d.start = start;
        d.accepting = std::move(accepting);
        if (delta.empty()) delta.assign(static_cast<size_t>(states) * alphabet.size(), -1);
        d.delta = std::move(delta);
        if (!d.is_complete()) {
            if (!complete_directive)
                throw ParseError(0, "dfa delta is not total (add missing transitions or the 'complete' directive)");
            d = complete(d);
        }
        d.check_valid();
        return d;
    }
    Nfa m;
    m.alphabet = alphabet;
    m.states = states;
    m.start = start;
    m.accepting = std::move(accepting);
    m.transitions = std::move(transitions);
    m.normalize();
    m.check_valid();
    return m;
}

inline std::string serialize(const Dfa& d) {
    std::ostringstream out;
    out << "type: dfa\n";
    out << "alphabet:";
    for (const auto& t : d.alphabet.tokens()) out << ' ' << t;
    out << "\nstates: " << d.states << "\nstart: " << d.start << "\naccept:";
    for (int s = 0; s < d.states; ++s)
        if (d.is_accepting(s)) out << ' ' << s;
    out << '\n';
    for (int s = 0; s < d.states; ++s)
        for (Sym a = 0; a < d.alphabet.size(); ++a)
            if (d.next(s, a) >= 0) out << s << ' ' << d.alphabet.token(a) << ' ' << d.next(s, a) << '\n';
    return out.str();
}

inline std::string serialize(const Nfa& m) {
    std::ostringstream out;
    out << "type: nfa\n";
    out << "alphabet:";
    for (const auto& t : m.alphabet.tokens()) out << ' ' << t;
    out << "\nstates: " << m.states << "\nstart: " << m.start << "\naccept:";
    for (int s = 0; s < m.states; ++s)
        if (m.is_accepting(s)) out << ' ' << s;
    out << '\n';
    for (const Trans& t : m.transitions)
        out << t.src << ' ' << (t.label == kEpsilon ? std::string("eps") : m.alphabet.token(t.label))
            << ' ' << t.dst << '\n';
    return out.str();
}

inline std::string serialize(const Automaton& a) {
    return std::visit([](const auto& x) { return serialize(x); }, a);
}

namespace detail {
inline void dot_header(std::ostringstream& out, int start) {
    out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    out << "  __start [shape=point];\n  __start -> " << start << ";\n";
}
}  // namespace detail

inline std::string to_dot(const Nfa& m) {
    std::ostringstream out;
    detail::dot_header(out, m.start);
    for (int s = 0; s < m.states; ++s)
        if (m.is_accepting(s)) out << "  " << s << " [shape=doublecircle];\n";
    for (const Trans& t : m.transitions)
        out << "  " << t.src << " -> " << t.dst << " [label=\""
            << (t.label == kEpsilon ? std::string("ε") : m.alphabet.token(t.label)) << "\"];\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const Dfa& d) { return to_dot(to_nfa(d)); }

inline std::string to_dot(const Automaton& a) {
    return std::visit([](const auto& x) { return to_dot(x); }, a);
}

/// Parses a word over the given alphabet from either concatenated
/// single-character tokens or whitespace-separated tokens; "(eps)" and ""
/// denote the empty word.
inline Word parse_word(const Alphabet& a, const std::string& text) {
    Word w;
    if (text.empty() || text == "(eps)") return w;
    auto toks = detail::split_ws(text);
    if (toks.size() > 1 || (a.single_char() && !a.index_of(text))) {
        // Space-separated tokens, or a run of single-char symbols.
        if (toks.size() == 1 && a.single_char()) {
            for (char c : toks[0]) {
                auto idx = a.index_of(std::string(1, c));
                if (!idx) throw std::invalid_argument("unknown symbol '" + std::string(1, c) + "'");
                w.push_back(*idx);
            }
            return w;
        }
        for (const auto& t : toks) {
            auto idx = a.index_of(t);
            if (!idx) throw std::invalid_argument("unknown symbol '" + t + "'");
            w.push_back(*idx);
        }
        return w;
    }
    auto idx = a.index_of(toks[0]);
    if (idx) {
        w.push_back(*idx);
        return w;
    }
    for (char c : toks[0]) {
        auto i = a.index_of(std::string(1, c));
        if (!i) throw std::invalid_argument("unknown symbol '" + std::string(1, c) + "'");
        w.push_back(*i);
    }
    return w;
}

}  // namespace convex
