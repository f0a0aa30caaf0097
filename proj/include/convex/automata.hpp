// automata.hpp -- alphabets, words, DFAs, NFA-epsilon, and the graph
// algorithms everything else is built from.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace convex {

/// Symbol id: an index into the declared alphabet. -1 is reserved for epsilon
/// on NFA transitions; words never contain it.
using Sym = int;
inline constexpr Sym kEpsilon = -1;

/// A word is a (possibly empty) sequence of symbol ids.
using Word = std::vector<Sym>;

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered alphabet; declaration order defines the lexicographic order used
/// for every tie-break in the library. The token "eps" is reserved.
class Alphabet {
public:
    Alphabet() = default;

    static Alphabet from_tokens(const std::vector<std::string>& tokens) {
        Alphabet a;
        for (const auto& t : tokens) a.add(t);
        return a;
    }

    void add(const std::string& token) {
        if (token.empty()) throw std::invalid_argument("empty alphabet token");
        if (token == "eps") throw std::invalid_argument("token 'eps' is reserved");
        if (index_.count(token)) throw std::invalid_argument("duplicate alphabet token: " + token);
        index_.emplace(token, static_cast<int>(tokens_.size()));
        tokens_.push_back(token);
    }

    int size() const { return static_cast<int>(tokens_.size()); }
    const std::string& token(Sym s) const { return tokens_.at(static_cast<size_t>(s)); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    std::optional<Sym> index_of(const std::string& token) const {
        auto it = index_.find(token);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool single_char() const {
        return std::all_of(tokens_.begin(), tokens_.end(),
                           [](const std::string& t) { return t.size() == 1; });
    }

    bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> index_;
};

/// Renders a word: tokens concatenated when every token is one character,
/// space-separated otherwise; the empty word renders as "(eps)".
inline std::string render_word(const Alphabet& a, const Word& w) {
    if (w.empty()) return "(eps)";
    std::string out;
    bool compact = a.single_char();
    for (size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += a.token(w[i]);
    }
    return out;
}

/// Complete deterministic automaton. delta is stored row-major
/// (state * |alphabet| + symbol); -1 marks a missing transition, which is
/// only legal transiently before complete() is applied.
struct Dfa {
    Alphabet alphabet;
    int states = 0;
    int start = 0;
    std::vector<char> accepting;  // states entries
    std::vector<int> delta;       // states * |alphabet| entries

    int next(int state, Sym a) const { return delta[static_cast<size_t>(state) * alphabet.size() + a]; }
    int& next_ref(int state, Sym a) { return delta[static_cast<size_t>(state) * alphabet.size() + a]; }

    bool is_complete() const {
        return std::none_of(delta.begin(), delta.end(), [](int t) { return t < 0; });
    }

    bool is_accepting(int state) const { return accepting[static_cast<size_t>(state)] != 0; }

    /// Runs w from the start state; returns (final state, final accepting).
    std::pair<int, bool> run(const Word& w) const {
        int s = start;
        for (Sym a : w) s = next(s, a);
        return {s, is_accepting(s)};
    }

    bool accepts(const Word& w) const { return run(w).second; }

    void check_valid() const {
        if (states < 1) throw std::invalid_argument("dfa needs at least one state");
        if (start < 0 || start >= states) throw std::invalid_argument("dfa start out of range");
        if (static_cast<int>(accepting.size()) != states) throw std::invalid_argument("dfa accepting size");
        if (delta.size() != static_cast<size_t>(states) * alphabet.size())
            throw std::invalid_argument("dfa delta size");
        for (int t : delta)
            if (t >= states) throw std::invalid_argument("dfa transition target out of range");
    }
};

/// One NFA transition; label == kEpsilon encodes an epsilon move.
struct Trans {
    int src;
    Sym label;
    int dst;
    friend bool operator==(const Trans& a, const Trans& b) {
        return a.src == b.src && a.label == b.label && a.dst == b.dst;
    }
    friend bool operator<(const Trans& a, const Trans& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.label != b.label) return a.label < b.label;
        return a.dst < b.dst;
    }
};

/// Nondeterministic automaton with optional epsilon transitions. The
/// transition list is kept sorted and duplicate-free.
struct Nfa {
    Alphabet alphabet;
    int states = 0;
    int start = 0;
    std::vector<char> accepting;
    std::vector<Trans> transitions;

    bool is_accepting(int state) const { return accepting[static_cast<size_t>(state)] != 0; }

    bool has_epsilon() const {
        return std::any_of(transitions.begin(), transitions.end(),
                           [](const Trans& t) { return t.label == kEpsilon; });
    }

    void add(int src, Sym label, int dst) { transitions.push_back({src, label, dst}); }

    /// Sorts and deduplicates the transition set.
    void normalize() {
        std::sort(transitions.begin(), transitions.end());
        transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    }

    void check_valid() const {
        if (states < 1) throw std::invalid_argument("nfa needs at least one state");
        if (start < 0 || start >= states) throw std::invalid_argument("nfa start out of range");
        for (const Trans& t : transitions) {
            if (t.src < 0 || t.src >= states || t.dst < 0 || t.dst >= states)
                throw std::invalid_argument("nfa transition endpoint out of range");
            if (t.label != kEpsilon && (t.label < 0 || t.label >= alphabet.size()))
                throw std::invalid_argument("nfa transition label out of range");
        }
    }
};

inline Nfa to_nfa(const Dfa& d) {
    Nfa m;
    m.alphabet = d.alphabet;
    m.states = d.states;
    m.start = d.start;
    m.accepting = d.accepting;
    for (int s = 0; s < d.states; ++s)
        for (Sym a = 0; a < d.alphabet.size(); ++a)
            if (d.next(s, a) >= 0) m.add(s, a, d.next(s, a));
    m.normalize();
    return m;
}

/// Converts an epsilon-free, deterministic, total NFA back to a DFA.
inline std::optional<Dfa> try_to_dfa(const Nfa& m) {
    Dfa d;
    d.alphabet = m.alphabet;
    d.states = m.states;
    d.start = m.start;
    d.accepting = m.accepting;
    d.delta.assign(static_cast<size_t>(m.states) * m.alphabet.size(), -1);
    for (const Trans& t : m.transitions) {
        if (t.label == kEpsilon) return std::nullopt;
        int& cell = d.next_ref(t.src, t.label);
        if (cell >= 0) return std::nullopt;
        cell = t.dst;
    }
    if (!d.is_complete()) return std::nullopt;
    return d;
}

/// Per-source index over a (normalized) transition list.
struct TransIndex {
    std::vector<int> first;  // states + 1 offsets into the transition vector

    TransIndex(const Nfa& m) : first(static_cast<size_t>(m.states) + 1, 0) {
        for (const Trans& t : m.transitions) ++first[static_cast<size_t>(t.src) + 1];
        for (int s = 0; s < m.states; ++s) first[static_cast<size_t>(s) + 1] += first[static_cast<size_t>(s)];
    }
};

// ---------------------------------------------------------------------------
// Completion and complement
// ---------------------------------------------------------------------------

/// Totalizes delta by routing every missing transition to a fresh rejecting
/// dead state that loops on all inputs. Already-total automata come back
/// unchanged.
inline Dfa complete(Dfa d) {
    if (d.is_complete()) return d;
    int dead = d.states;
    d.states += 1;
    d.accepting.push_back(0);
    std::vector<int> delta(static_cast<size_t>(d.states) * d.alphabet.size(), dead);
    for (int s = 0; s + 1 < d.states; ++s)
        for (Sym a = 0; a < d.alphabet.size(); ++a) {
            int t = d.delta[static_cast<size_t>(s) * d.alphabet.size() + a];
            delta[static_cast<size_t>(s) * d.alphabet.size() + a] = t < 0 ? dead : t;
        }
    d.delta = std::move(delta);
    return d;
}

inline Dfa complement(Dfa d) {
    if (!d.is_complete()) throw std::invalid_argument("complement requires a complete dfa");
    for (auto& f : d.accepting) f = f ? 0 : 1;
    return d;
}

// ---------------------------------------------------------------------------
// NFA simulation
// ---------------------------------------------------------------------------

/// In-place epsilon closure of a state set given as a membership bitmap.
inline void eps_close(const Nfa& m, const TransIndex& ix, std::vector<char>& in_set) {
    std::vector<int> stack;
    for (int s = 0; s < m.states; ++s)
        if (in_set[static_cast<size_t>(s)]) stack.push_back(s);
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
            const Trans& t = m.transitions[static_cast<size_t>(i)];
            if (t.label == kEpsilon && !in_set[static_cast<size_t>(t.dst)]) {
                in_set[static_cast<size_t>(t.dst)] = 1;
                stack.push_back(t.dst);
            }
        }
    }
}

/// Direct subset-stepping membership test (no determinization involved).
inline bool nfa_accepts(const Nfa& m, const Word& w) {
    TransIndex ix(m);
    std::vector<char> cur(static_cast<size_t>(m.states), 0);
    cur[static_cast<size_t>(m.start)] = 1;
    eps_close(m, ix, cur);
    for (Sym a : w) {
        std::vector<char> nxt(static_cast<size_t>(m.states), 0);
        for (int s = 0; s < m.states; ++s) {
            if (!cur[static_cast<size_t>(s)]) continue;
            for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
                const Trans& t = m.transitions[static_cast<size_t>(i)];
                if (t.label == a) nxt[static_cast<size_t>(t.dst)] = 1;
            }
        }
        eps_close(m, ix, nxt);
        cur = std::move(nxt);
    }
    for (int s = 0; s < m.states; ++s)
        if (cur[static_cast<size_t>(s)] && m.is_accepting(s)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Reachability, trimming, emptiness
// ---------------------------------------------------------------------------

inline std::vector<char> reachable_states(const Nfa& m) {
    TransIndex ix(m);
    std::vector<char> seen(static_cast<size_t>(m.states), 0);
    std::vector<int> stack{m.start};
    seen[static_cast<size_t>(m.start)] = 1;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
            int d = m.transitions[static_cast<size_t>(i)].dst;
            if (!seen[static_cast<size_t>(d)]) {
                seen[static_cast<size_t>(d)] = 1;
                stack.push_back(d);
            }
        }
    }
    return seen;
}

inline std::vector<char> coreachable_states(const Nfa& m) {
    std::vector<std::vector<int>> rev(static_cast<size_t>(m.states));
    for (const Trans& t : m.transitions) rev[static_cast<size_t>(t.dst)].push_back(t.src);
    std::vector<char> seen(static_cast<size_t>(m.states), 0);
    std::vector<int> stack;
    for (int s = 0; s < m.states; ++s)
        if (m.is_accepting(s)) {
            seen[static_cast<size_t>(s)] = 1;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int p : rev[static_cast<size_t>(s)])
            if (!seen[static_cast<size_t>(p)]) {
                seen[static_cast<size_t>(p)] = 1;
                stack.push_back(p);
            }
    }
    return seen;
}

inline bool is_empty(const Nfa& m) {
    auto fwd = reachable_states(m);
    for (int s = 0; s < m.states; ++s)
        if (fwd[static_cast<size_t>(s)] && m.is_accepting(s)) return false;
    return true;
}

/// Keeps exactly the states that are reachable from the start and can reach
/// an accepting state. An automaton with empty language trims to the
/// canonical one-state empty automaton over the same alphabet.
inline Nfa trim(const Nfa& m) {
    auto fwd = reachable_states(m);
    auto bwd = coreachable_states(m);
    std::vector<int> remap(static_cast<size_t>(m.states), -1);
    int count = 0;
    for (int s = 0; s < m.states; ++s)
        if (fwd[static_cast<size_t>(s)] && bwd[static_cast<size_t>(s)]) remap[static_cast<size_t>(s)] = count++;

    Nfa out;
    out.alphabet = m.alphabet;
    if (count == 0 || remap[static_cast<size_t>(m.start)] < 0) {
        out.states = 1;
        out.start = 0;
        out.accepting.assign(1, 0);
        return out;
    }
    out.states = count;
    out.start = remap[static_cast<size_t>(m.start)];
    out.accepting.assign(static_cast<size_t>(count), 0);
    for (int s = 0; s < m.states; ++s)
        if (remap[static_cast<size_t>(s)] >= 0 && m.is_accepting(s))
            out.accepting[static_cast<size_t>(remap[static_cast<size_t>(s)])] = 1;
    for (const Trans& t : m.transitions) {
        int a = remap[static_cast<size_t>(t.src)], b = remap[static_cast<size_t>(t.dst)];
        if (a >= 0 && b >= 0) out.add(a, t.label, b);
    }
    out.normalize();
    return out;
}

// ---------------------------------------------------------------------------
// Strongly connected components and language infiniteness
// ---------------------------------------------------------------------------

/// Iterative Tarjan; returns a component id per state. Ids are not ordered.
inline std::vector<int> scc_ids(int states, const std::vector<Trans>& transitions) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(states));
    for (const Trans& t : transitions) adj[static_cast<size_t>(t.src)].push_back(t.dst);

    std::vector<int> comp(static_cast<size_t>(states), -1), low(static_cast<size_t>(states), 0),
        num(static_cast<size_t>(states), -1);
    std::vector<char> on_stack(static_cast<size_t>(states), 0);
    std::vector<int> stack;
    int counter = 0, comps = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    for (int root = 0; root < states; ++root) {
        if (num[static_cast<size_t>(root)] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        num[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<size_t>(root)] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < adj[static_cast<size_t>(f.v)].size()) {
                int w = adj[static_cast<size_t>(f.v)][f.edge++];
                if (num[static_cast<size_t>(w)] == -1) {
                    num[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], num[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(f.v)] == num[static_cast<size_t>(f.v)]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<size_t>(w)] = 0;
                        comp[static_cast<size_t>(w)] = comps;
                        if (w == f.v) break;
                    }
                    ++comps;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<size_t>(call.back().v)] =
                        std::min(low[static_cast<size_t>(call.back().v)], low[static_cast<size_t>(v)]);
            }
        }
    }
    return comp;
}

/// True iff the accepted language is infinite. After trimming, the language
/// is infinite exactly when some non-epsilon transition starts and ends in
/// the same strongly connected component (a cycle consuming epsilon moves
/// only pumps nothing).
inline bool is_language_infinite(const Nfa& m) {
    Nfa t = trim(m);
    auto comp = scc_ids(t.states, t.transitions);
    for (const Trans& tr : t.transitions)
        if (tr.label != kEpsilon && comp[static_cast<size_t>(tr.src)] == comp[static_cast<size_t>(tr.dst)])
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Shortest accepted word
// ---------------------------------------------------------------------------

/// Shortest accepted word, ties broken lexicographically in alphabet order;
/// nullopt iff the language is empty.
inline std::optional<Word> shortest_accepted(const Nfa& m) {
    // Label-setting search: labels compare by (length, word). Epsilon edges
    // cost nothing, so the first settled accepting state is optimal.
    using Label = std::string;  // symbol ids as bytes
    auto better = [](const Label& a, const Label& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    TransIndex ix(m);
    std::vector<std::optional<Label>> best(static_cast<size_t>(m.states));
    using Entry = std::pair<Label, int>;
    auto cmp = [&](const Entry& a, const Entry& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
    pq.push({Label{}, m.start});
    best[static_cast<size_t>(m.start)] = Label{};
    std::vector<char> settled(static_cast<size_t>(m.states), 0);
    while (!pq.empty()) {
        auto [lab, s] = pq.top();
        pq.pop();
        if (settled[static_cast<size_t>(s)]) continue;
        if (best[static_cast<size_t>(s)] && better(*best[static_cast<size_t>(s)], lab)) continue;
        settled[static_cast<size_t>(s)] = 1;
        if (m.is_accepting(s)) {
            Word w;
            for (char c : lab) w.push_back(static_cast<Sym>(static_cast<unsigned char>(c)));
            return w;
        }
        for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
            const Trans& t = m.transitions[static_cast<size_t>(i)];
            Label nl = lab;
            if (t.label != kEpsilon) nl.push_back(static_cast<char>(t.label));
            auto& slot = best[static_cast<size_t>(t.dst)];
            if (!slot || better(nl, *slot)) {
                slot = nl;
                pq.push({std::move(nl), t.dst});
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Product, reversal, epsilon removal, determinization
// ---------------------------------------------------------------------------

/// Direct product over reachable state pairs; both inputs must be
/// epsilon-free and share one alphabet.
inline Nfa intersect(const Nfa& m1, const Nfa& m2) {
    if (m1.has_epsilon() || m2.has_epsilon())
        throw std::invalid_argument("intersect requires epsilon-free automata");
    if (m1.alphabet != m2.alphabet) throw std::invalid_argument("alphabet mismatch");
    TransIndex ix1(m1), ix2(m2);
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> order;
    auto id_of = [&](int a, int b) {
        auto [it, fresh] = ids.emplace(std::make_pair(a, b), static_cast<int>(order.size()));
        if (fresh) order.emplace_back(a, b);
        return it->second;
    };
    Nfa out;
    out.alphabet = m1.alphabet;
    out.start = id_of(m1.start, m2.start);
    for (size_t qi = 0; qi < order.size(); ++qi) {
        auto [s1, s2] = order[qi];
        for (int i = ix1.first[static_cast<size_t>(s1)]; i < ix1.first[static_cast<size_t>(s1) + 1]; ++i) {
            const Trans& t1 = m1.transitions[static_cast<size_t>(i)];
            for (int j = ix2.first[static_cast<size_t>(s2)]; j < ix2.first[static_cast<size_t>(s2) + 1]; ++j) {
                const Trans& t2 = m2.transitions[static_cast<size_t>(j)];
                if (t1.label != t2.label) continue;
                int d = id_of(t1.dst, t2.dst);
                out.add(static_cast<int>(qi), t1.label, d);
            }
        }
    }
    out.states = static_cast<int>(order.size());
    out.accepting.assign(order.size(), 0);
    for (size_t i = 0; i < order.size(); ++i)
        if (m1.is_accepting(order[i].first) && m2.is_accepting(order[i].second)) out.accepting[i] = 1;
    out.normalize();
    return out;
}

/// Mirror language: edges reversed, one fresh start state with epsilon edges
/// into the old accepting states, old start becomes the accepting state.
inline Nfa reverse(const Nfa& m) {
    Nfa out;
    out.alphabet = m.alphabet;
    out.states = m.states + 1;
    out.start = m.states;
    out.accepting.assign(static_cast<size_t>(m.states) + 1, 0);
    out.accepting[static_cast<size_t>(m.start)] = 1;
    for (const Trans& t : m.transitions) out.add(t.dst, t.label, t.src);
    for (int s = 0; s < m.states; ++s)
        if (m.is_accepting(s)) out.add(m.states, kEpsilon, s);
    out.normalize();
    return out;
}

/// Folds epsilon closures into symbol transitions; the state count is kept.
inline Nfa remove_epsilon(const Nfa& m) {
    TransIndex ix(m);
    Nfa out;
    out.alphabet = m.alphabet;
    out.states = m.states;
    out.start = m.start;
    out.accepting.assign(static_cast<size_t>(m.states), 0);
    for (int s = 0; s < m.states; ++s) {
        std::vector<char> cl(static_cast<size_t>(m.states), 0);
        cl[static_cast<size_t>(s)] = 1;
        eps_close(m, ix, cl);
        for (int c = 0; c < m.states; ++c) {
            if (!cl[static_cast<size_t>(c)]) continue;
            if (m.is_accepting(c)) out.accepting[static_cast<size_t>(s)] = 1;
            for (int i = ix.first[static_cast<size_t>(c)]; i < ix.first[static_cast<size_t>(c) + 1]; ++i) {
                const Trans& t = m.transitions[static_cast<size_t>(i)];
                if (t.label != kEpsilon) out.add(s, t.label, t.dst);
            }
        }
    }
    out.normalize();
    return out;
}

inline constexpr long long kDefaultSubsetCap = 1 << 20;

/// Subset construction. The result is a complete DFA over the same alphabet
/// covering only reachable subsets; exceeding the cap raises ResourceLimit.
inline Dfa determinize(const Nfa& m, long long subset_cap = kDefaultSubsetCap) {
    TransIndex ix(m);
    auto closure_of = [&](std::vector<char> set) {
        eps_close(m, ix, set);
        return set;
    };
    std::map<std::vector<char>, int> ids;
    std::vector<std::vector<char>> order;
    auto id_of = [&](std::vector<char> set) {
        auto [it, fresh] = ids.emplace(std::move(set), static_cast<int>(order.size()));
        if (fresh) {
            order.push_back(it->first);
            if (static_cast<long long>(order.size()) > subset_cap)
                throw ResourceLimit("subset construction exceeded cap");
        }
        return it->second;
    };

    std::vector<char> init(static_cast<size_t>(m.states), 0);
    init[static_cast<size_t>(m.start)] = 1;
    int start_id = id_of(closure_of(std::move(init)));

    Dfa d;
    d.alphabet = m.alphabet;
    d.start = start_id;
    std::vector<int> delta;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        for (Sym a = 0; a < m.alphabet.size(); ++a) {
            std::vector<char> nxt(static_cast<size_t>(m.states), 0);
            const auto& cur = order[qi];
            for (int s = 0; s < m.states; ++s) {
                if (!cur[static_cast<size_t>(s)]) continue;
                for (int i = ix.first[static_cast<size_t>(s)]; i < ix.first[static_cast<size_t>(s) + 1]; ++i) {
                    const Trans& t = m.transitions[static_cast<size_t>(i)];
                    if (t.label == a) nxt[static_cast<size_t>(t.dst)] = 1;
                }
            }
            delta.push_back(id_of(closure_of(std::move(nxt))));
        }
    }
    // The loop above re-reads order.size(), so every subset discovered while
    // emitting rows also got its own row before the loop ended.
    d.states = static_cast<int>(order.size());
    d.accepting.assign(order.size(), 0);
    for (size_t i = 0; i < order.size(); ++i)
        for (int s = 0; s < m.states; ++s)
            if (order[i][static_cast<size_t>(s)] && m.is_accepting(s)) {
                d.accepting[i] = 1;
                break;
            }
    d.delta = std::move(delta);
    d.check_valid();
    return d;
}

}  // namespace convex
