// cfg.hpp -- context-free grammars and the subword-freeness decision:
// an infinite language is never subword-free (pump a word down and it stays
// a subword), and a finite one is enumerated and checked pairwise.
//
// Grammar file format: one production per line,
//   Head -> sym sym | sym ...
// Lowercase tokens are terminals, Capitalized tokens are nonterminals,
// `eps` denotes the empty body, the first line's head is the start symbol,
// `#` starts a comment.

#pragma once

#include <cctype>
#include <set>

#include "convex/format.hpp"
#include "convex/relations.hpp"

namespace convex {

struct Cfg {
    struct SymRef {
        bool terminal;
        int idx;
        friend bool operator==(const SymRef& a, const SymRef& b) {
            return a.terminal == b.terminal && a.idx == b.idx;
        }
    };
    struct Production {
        int head;
        std::vector<SymRef> body;
    };

    std::vector<std::string> terminals;     // in order of first appearance
    std::vector<std::string> nonterminals;  // in order of first appearance
    int start = 0;
    std::vector<Production> productions;

    Alphabet terminal_alphabet() const { return Alphabet::from_tokens(terminals); }
};

inline Cfg parse_cfg(const std::string& text) {
    Cfg g;
    std::unordered_map<std::string, int> term_ids, nonterm_ids;
    auto nonterm = [&](const std::string& t) {
        auto [it, fresh] = nonterm_ids.emplace(t, static_cast<int>(g.nonterminals.size()));
        if (fresh) g.nonterminals.push_back(t);
        return it->second;
    };
    auto term = [&](const std::string& t) {
        auto [it, fresh] = term_ids.emplace(t, static_cast<int>(g.terminals.size()));
        if (fresh) g.terminals.push_back(t);
        return it->second;
    };

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool saw_start = false;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto toks = detail::split_ws(raw);
        if (toks.empty()) continue;
        if (toks.size() < 3 || toks[1] != "->")
            throw ParseError(lineno, "expected 'Head -> body | body ...'");
        if (!std::isupper(static_cast<unsigned char>(toks[0][0])))
            throw ParseError(lineno, "nonterminal names start with an uppercase letter");
        int head = nonterm(toks[0]);
        if (!saw_start) {
            g.start = head;
            saw_start = true;
        }
        std::vector<Cfg::SymRef> body;
        auto flush = [&]() {
            g.productions.push_back({head, body});
            body.clear();
        };
        for (size_t i = 2; i < toks.size(); ++i) {
            const std::string& t = toks[i];
            if (t == "|") {
                flush();
                continue;
            }
            if (t == "eps") continue;  // contributes nothing to the body
            if (std::isupper(static_cast<unsigned char>(t[0])))
                body.push_back({false, nonterm(t)});
            else
                body.push_back({true, term(t)});
        }
        flush();
    }
    if (!saw_start) throw ParseError(0, "empty grammar");
    return g;
}

/// Removes non-generating and unreachable nonterminals (and their
/// productions). A grammar whose start is useless collapses to the canonical
/// empty grammar: the start symbol with no productions.
inline Cfg cfg_reduce(const Cfg& g) {
    size_t nn = g.nonterminals.size();
    std::vector<char> generating(nn, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (generating[static_cast<size_t>(p.head)]) continue;
            bool all = true;
            for (const auto& s : p.body)
                if (!s.terminal && !generating[static_cast<size_t>(s.idx)]) {
                    all = false;
                    break;
                }
            if (all) {
                generating[static_cast<size_t>(p.head)] = 1;
                changed = true;
            }
        }
    }
    std::vector<char> reachable(nn, 0);
    if (generating[static_cast<size_t>(g.start)]) {
        std::vector<int> stack{g.start};
        reachable[static_cast<size_t>(g.start)] = 1;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (const auto& p : g.productions) {
                if (p.head != a) continue;
                bool all = true;
                for (const auto& s : p.body)
                    if (!s.terminal && !generating[static_cast<size_t>(s.idx)]) all = false;
                if (!all) continue;
                for (const auto& s : p.body)
                    if (!s.terminal && !reachable[static_cast<size_t>(s.idx)]) {
                        reachable[static_cast<size_t>(s.idx)] = 1;
                        stack.push_back(s.idx);
                    }
            }
        }
    }

    Cfg out;
    out.terminals = g.terminals;
    std::vector<int> remap(nn, -1);
    for (size_t i = 0; i < nn; ++i)
        if (generating[i] && reachable[i]) {
            remap[i] = static_cast<int>(out.nonterminals.size());
            out.nonterminals.push_back(g.nonterminals[i]);
        }
    if (remap[static_cast<size_t>(g.start)] < 0) {
        out.nonterminals = {g.nonterminals[static_cast<size_t>(g.start)]};
        out.start = 0;
        return out;
    }
    out.start = remap[static_cast<size_t>(g.start)];
    for (const auto& p : g.productions) {
        if (remap[static_cast<size_t>(p.head)] < 0) continue;
        bool all = true;
        std::vector<Cfg::SymRef> body;
        for (const auto& s : p.body) {
            if (s.terminal) {
                body.push_back(s);
            } else if (remap[static_cast<size_t>(s.idx)] >= 0) {
                body.push_back({false, remap[static_cast<size_t>(s.idx)]});
            } else {
                all = false;
                break;
            }
        }
        if (all) out.productions.push_back({remap[static_cast<size_t>(p.head)], std::move(body)});
    }
    return out;
}

namespace detail {

/// Epsilon- and unit-normalizes a reduced grammar: afterwards no production
/// is empty and none is a lone nonterminal. The empty word is dropped from
/// the language (callers re-add it via the returned nullable flag).
inline Cfg cfg_normalize(const Cfg& g, bool* start_nullable) {
    size_t nn = g.nonterminals.size();
    std::vector<char> nullable(nn, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (nullable[static_cast<size_t>(p.head)]) continue;
            bool all = true;
            for (const auto& s : p.body)
                if (s.terminal || !nullable[static_cast<size_t>(s.idx)]) {
                    all = false;
                    break;
                }
            if (all) {
                nullable[static_cast<size_t>(p.head)] = 1;
                changed = true;
            }
        }
    }
    if (start_nullable) *start_nullable = nn > 0 && nullable[static_cast<size_t>(g.start)] != 0;

    // Epsilon elimination: every way of dropping nullable occurrences.
    std::set<std::pair<int, std::vector<std::pair<bool, int>>>> seen;
    Cfg mid;
    mid.terminals = g.terminals;
    mid.nonterminals = g.nonterminals;
    mid.start = g.start;
    for (const auto& p : g.productions) {
        std::vector<size_t> optional_pos;
        for (size_t i = 0; i < p.body.size(); ++i)
            if (!p.body[i].terminal && nullable[static_cast<size_t>(p.body[i].idx)])
                optional_pos.push_back(i);
        if (optional_pos.size() > 20)
            throw ResourceLimit("epsilon elimination: too many nullable symbols in one body");
        size_t variants = size_t{1} << optional_pos.size();
        for (size_t mask = 0; mask < variants; ++mask) {
            std::vector<Cfg::SymRef> body;
            size_t oi = 0;
            for (size_t i = 0; i < p.body.size(); ++i) {
                bool drop = false;
                if (oi < optional_pos.size() && optional_pos[oi] == i) {
                    drop = (mask >> oi) & 1;
                    ++oi;
                }
                if (!drop) body.push_back(p.body[i]);
            }
            if (body.empty()) continue;
            std::vector<std::pair<bool, int>> key;
            for (const auto& s : body) key.emplace_back(s.terminal, s.idx);
            if (seen.emplace(p.head, key).second) mid.productions.push_back({p.head, std::move(body)});
        }
    }

    // Unit elimination: close unit chains, then inline non-unit bodies.
    std::vector<std::vector<char>> unit(nn, std::vector<char>(nn, 0));
    for (size_t i = 0; i < nn; ++i) unit[i][i] = 1;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : mid.productions)
            if (p.body.size() == 1 && !p.body[0].terminal)
                for (size_t a = 0; a < nn; ++a)
                    if (unit[a][static_cast<size_t>(p.head)] &&
                        !unit[a][static_cast<size_t>(p.body[0].idx)]) {
                        unit[a][static_cast<size_t>(p.body[0].idx)] = 1;
                        changed = true;
                    }
    }
    Cfg out;
    out.terminals = g.terminals;
    out.nonterminals = g.nonterminals;
    out.start = g.start;
    std::set<std::pair<int, std::vector<std::pair<bool, int>>>> seen2;
    for (size_t a = 0; a < nn; ++a)
        for (const auto& p : mid.productions) {
            if (!unit[a][static_cast<size_t>(p.head)]) continue;
            if (p.body.size() == 1 && !p.body[0].terminal) continue;
            std::vector<std::pair<bool, int>> key;
            for (const auto& s : p.body) key.emplace_back(s.terminal, s.idx);
            if (seen2.emplace(static_cast<int>(a), key).second)
                out.productions.push_back({static_cast<int>(a), p.body});
        }
    return cfg_reduce(out);
}

inline bool cfg_body_graph_has_cycle(const Cfg& g) {
    size_t nn = g.nonterminals.size();
    std::vector<std::vector<int>> adj(nn);
    for (const auto& p : g.productions)
        for (const auto& s : p.body)
            if (!s.terminal) adj[static_cast<size_t>(p.head)].push_back(s.idx);
    std::vector<int> color(nn, 0);  // 0 fresh, 1 on stack, 2 done
    for (size_t r = 0; r < nn; ++r) {
        if (color[r]) continue;
        std::vector<std::pair<int, size_t>> stack{{static_cast<int>(r), 0}};
        color[r] = 1;
        while (!stack.empty()) {
            auto& [v, ei] = stack.back();
            if (ei < adj[static_cast<size_t>(v)].size()) {
                int w = adj[static_cast<size_t>(v)][ei++];
                if (color[static_cast<size_t>(w)] == 1) return true;
                if (color[static_cast<size_t>(w)] == 0) {
                    color[static_cast<size_t>(w)] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                color[static_cast<size_t>(v)] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace detail

/// True iff L(g) is infinite: reduce, normalize away epsilon and unit
/// productions, and look for a cycle in the appears-in-a-body graph of the
/// surviving nonterminals.
inline bool cfg_is_infinite(const Cfg& g) {
    Cfg red = cfg_reduce(g);
    if (red.productions.empty()) return false;
    Cfg norm = detail::cfg_normalize(red, nullptr);
    return detail::cfg_body_graph_has_cycle(norm);
}

struct CfgEnumLimits {
    long long max_words = 100000;
    size_t max_word_len = 1000;
};

/// Enumerates a finite language (the grammar must not be infinite), sorted
/// length-then-lex over the terminal order.
inline std::vector<Word> cfg_enumerate(const Cfg& g, CfgEnumLimits limits = {}) {
    Cfg red = cfg_reduce(g);
    bool eps_in = false;
    Cfg norm = detail::cfg_normalize(red, &eps_in);
    if (detail::cfg_body_graph_has_cycle(norm))
        throw std::invalid_argument("cfg_enumerate requires a finite language");

    size_t nn = norm.nonterminals.size();
    std::vector<std::vector<Word>> words(nn);
    std::vector<char> done(nn, 0);
    long long total = 0;

    auto combine = [&](const std::vector<Cfg::SymRef>& body,
                       auto&& rec) -> std::vector<Word> {
        std::vector<Word> acc{Word{}};
        for (const auto& s : body) {
            std::vector<Word> next;
            if (s.terminal) {
                for (auto& w : acc) {
                    Word e = w;
                    e.push_back(s.idx);
                    if (e.size() <= limits.max_word_len) next.push_back(std::move(e));
                }
            } else {
                const auto& sub = rec(s.idx, rec);
                for (const auto& w : acc)
                    for (const auto& x : sub) {
                        if (w.size() + x.size() > limits.max_word_len) continue;
                        Word e = w;
                        e.insert(e.end(), x.begin(), x.end());
                        next.push_back(std::move(e));
                    }
            }
            acc = std::move(next);
            if (static_cast<long long>(acc.size()) > limits.max_words)
                throw ResourceLimit("cfg enumeration exceeded the word cap");
        }
        return acc;
    };
    auto eval = [&](int a, auto&& rec) -> const std::vector<Word>& {
        if (done[static_cast<size_t>(a)]) return words[static_cast<size_t>(a)];
        done[static_cast<size_t>(a)] = 1;  // acyclic, so no re-entry
        std::set<Word> out;
        for (const auto& p : norm.productions) {
            if (p.head != a) continue;
            for (auto& w : combine(p.body, rec)) out.insert(std::move(w));
        }
        total += static_cast<long long>(out.size());
        if (total > limits.max_words) throw ResourceLimit("cfg enumeration exceeded the word cap");
        words[static_cast<size_t>(a)].assign(out.begin(), out.end());
        return words[static_cast<size_t>(a)];
    };

    std::vector<Word> lang;
    if (norm.productions.empty()) {
        // Language is empty or just the empty word.
    } else {
        const auto& s = eval(norm.start, eval);
        lang = s;
    }
    if (eps_in) lang.push_back(Word{});
    std::sort(lang.begin(), lang.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    lang.erase(std::unique(lang.begin(), lang.end()), lang.end());
    return lang;
}

struct CfgSubwordResult {
    bool subword_free = false;
    bool infinite = false;
    std::optional<std::pair<Word, Word>> witness;  // (contained, container), both in L
};

/// Subword-freeness of L(g). Infinite languages fail outright; the witness
/// pair is then only reported when a bounded derivation search surfaces one.
/// Finite languages are enumerated and checked pairwise, returning the first
/// violating pair under the (|w|, |v|, w, v) order.
inline CfgSubwordResult cfg_is_subword_free(const Cfg& g, CfgEnumLimits limits = {}) {
    CfgSubwordResult res;
    auto scan_pairs = [&](const std::vector<Word>& lang) -> std::optional<std::pair<Word, Word>> {
        // lang is sorted length-then-lex; minimal pair under (|w|, |v|, w, v).
        std::optional<std::pair<size_t, size_t>> best;  // (vi, wi)
        size_t best_wlen = 0;
        for (size_t wi = 0; wi < lang.size(); ++wi) {
            if (best && lang[wi].size() > best_wlen) break;
            for (size_t vi = 0; vi < wi; ++vi) {
                if (lang[vi].size() >= lang[wi].size()) continue;
                if (!is_subword_of(lang[vi], lang[wi])) continue;
                if (!best || lang[vi].size() < lang[best->first].size()) {
                    best = {vi, wi};
                    best_wlen = lang[wi].size();
                }
                break;  // vi ascending: the first hit is minimal for this w
            }
        }
        if (!best) return std::nullopt;
        return std::make_pair(lang[best->first], lang[best->second]);
    };
    if (cfg_is_infinite(g)) {
        res.infinite = true;
        res.subword_free = false;
        // Bounded best-effort witness: derive a few short words and scan.
        Cfg red = cfg_reduce(g);
        std::vector<Word> sample;
        std::vector<std::vector<Cfg::SymRef>> queue{{Cfg::SymRef{false, red.start}}};
        std::set<Word> found;
        size_t steps = 0;
        while (!queue.empty() && steps < 20000 && found.size() < 400) {
            ++steps;
            auto form = queue.back();
            queue.pop_back();
            size_t i = 0;
            while (i < form.size() && form[i].terminal) ++i;
            if (i == form.size()) {
                if (form.size() <= 14) {
                    Word w;
                    for (auto& s : form) w.push_back(s.idx);
                    found.insert(std::move(w));
                }
                continue;
            }
            if (form.size() > 16) continue;
            for (const auto& p : red.productions) {
                if (p.head != form[i].idx) continue;
                std::vector<Cfg::SymRef> next(form.begin(), form.begin() + static_cast<long>(i));
                next.insert(next.end(), p.body.begin(), p.body.end());
                next.insert(next.end(), form.begin() + static_cast<long>(i) + 1, form.end());
                queue.push_back(std::move(next));
            }
        }
        sample.assign(found.begin(), found.end());
        std::sort(sample.begin(), sample.end(), [](const Word& a, const Word& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        res.witness = scan_pairs(sample);
        return res;
    }
    auto lang = cfg_enumerate(g, limits);
    res.witness = scan_pairs(lang);
    res.subword_free = !res.witness.has_value();
    return res;
}

}  // namespace convex
