// property.hpp -- the twelve (relation, mode) properties, query parsing, and
// the witness value type.

#pragma once

#include <optional>
#include <string>

#include "convex/automata.hpp"

namespace convex {

enum class Relation { Prefix, Suffix, Factor, Subword };
enum class Mode { Convex, Closed, Free };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Prefix: return "prefix";
        case Relation::Suffix: return "suffix";
        case Relation::Factor: return "factor";
        case Relation::Subword: return "subword";
    }
    return "?";
}

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::Convex: return "convex";
        case Mode::Closed: return "closed";
        case Mode::Free: return "free";
    }
    return "?";
}

constexpr Relation kAllRelations[] = {Relation::Prefix, Relation::Suffix, Relation::Factor,
                                      Relation::Subword};
constexpr Mode kAllModes[] = {Mode::Convex, Mode::Closed, Mode::Free};

/// A property to decide: one of the twelve (relation, mode) pairs, optionally
/// the converse-closure variant (closed mode only) and/or the almost variant.
struct PropertyQuery {
    Relation relation;
    Mode mode;
    bool converse = false;  // legal only with mode == Closed
    bool almost = false;

    void check_valid() const {
        if (converse && mode != Mode::Closed)
            throw std::invalid_argument("converse applies to closure properties only");
    }
};

inline std::string property_name(const PropertyQuery& q) {
    std::string s;
    if (q.almost) s += "almost-";
    if (q.converse) s += "converse-";
    s += to_string(q.relation);
    s += '-';
    s += to_string(q.mode);
    return s;
}

/// Parses "prefix-convex", "converse-factor-closed", "ideal" (an alias for
/// converse-factor-closed), with an optional "almost-" prefix.
inline std::optional<PropertyQuery> parse_property(std::string text) {
    PropertyQuery q{Relation::Prefix, Mode::Convex, false, false};
    if (text.rfind("almost-", 0) == 0) {
        q.almost = true;
        text = text.substr(7);
    }
    if (text == "ideal") {
        q.relation = Relation::Factor;
        q.mode = Mode::Closed;
        q.converse = true;
        return q;
    }
    if (text.rfind("converse-", 0) == 0) {
        q.converse = true;
        text = text.substr(9);
    }
    auto dash = text.find('-');
    if (dash == std::string::npos) return std::nullopt;
    std::string rel = text.substr(0, dash), mode = text.substr(dash + 1);
    if (rel == "prefix") q.relation = Relation::Prefix;
    else if (rel == "suffix") q.relation = Relation::Suffix;
    else if (rel == "factor") q.relation = Relation::Factor;
    else if (rel == "subword") q.relation = Relation::Subword;
    else return std::nullopt;
    if (mode == "convex") q.mode = Mode::Convex;
    else if (mode == "closed") q.mode = Mode::Closed;
    else if (mode == "free") q.mode = Mode::Free;
    else return std::nullopt;
    if (q.converse && q.mode != Mode::Closed) return std::nullopt;
    return q;
}

/// A certificate that a property fails.
///
/// convex:  u,w in L, v not in L, u <= v <= w   (u present)
/// closed:  w in L, v not in L, v <= w          (u absent)
/// free:    v,w in L, v <= w, v != w            (u absent)
/// converse-closed: v in L, w not in L, v <= w  (u absent)
///
/// The positions vectors realize the containments inside w: v_positions are
/// the indices of w spelling v (a contiguous run except for the subword
/// relation), and u_positions, when u is present, are a subset of
/// v_positions. Both use the leftmost embedding.
struct Witness {
    std::optional<Word> u;
    Word v;
    Word w;
    std::vector<int> v_positions;
    std::vector<int> u_positions;
};

}  // namespace convex
