// relations.hpp -- the four containment relations on words, as direct
// predicates, plus leftmost embeddings.

#pragma once

#include "convex/property.hpp"

namespace convex {

inline bool is_prefix_of(const Word& x, const Word& y) {
    if (x.size() > y.size()) return false;
    return std::equal(x.begin(), x.end(), y.begin());
}

inline bool is_suffix_of(const Word& x, const Word& y) {
    if (x.size() > y.size()) return false;
    return std::equal(x.rbegin(), x.rend(), y.rbegin());
}

inline bool is_factor_of(const Word& x, const Word& y) {
    if (x.size() > y.size()) return false;
    if (x.empty()) return true;
    return std::search(y.begin(), y.end(), x.begin(), x.end()) != y.end();
}

inline bool is_subword_of(const Word& x, const Word& y) {
    size_t i = 0;
    for (size_t j = 0; j < y.size() && i < x.size(); ++j)
        if (y[j] == x[i]) ++i;
    return i == x.size();
}

/// Non-strict containment x <= y under the given relation.
inline bool relation_holds(Relation r, const Word& x, const Word& y) {
    switch (r) {
        case Relation::Prefix: return is_prefix_of(x, y);
        case Relation::Suffix: return is_suffix_of(x, y);
        case Relation::Factor: return is_factor_of(x, y);
        case Relation::Subword: return is_subword_of(x, y);
    }
    return false;
}

/// Leftmost embedding of inner into outer: the positions of outer spelling
/// inner. Assumes relation_holds(r, inner, outer).
inline std::vector<int> leftmost_embedding(Relation r, const Word& inner, const Word& outer) {
    std::vector<int> pos;
    pos.reserve(inner.size());
    switch (r) {
        case Relation::Prefix:
            for (size_t i = 0; i < inner.size(); ++i) pos.push_back(static_cast<int>(i));
            break;
        case Relation::Suffix: {
            size_t off = outer.size() - inner.size();
            for (size_t i = 0; i < inner.size(); ++i) pos.push_back(static_cast<int>(off + i));
            break;
        }
        case Relation::Factor: {
            auto it = std::search(outer.begin(), outer.end(), inner.begin(), inner.end());
            size_t off = static_cast<size_t>(it - outer.begin());
            for (size_t i = 0; i < inner.size(); ++i) pos.push_back(static_cast<int>(off + i));
            break;
        }
        case Relation::Subword: {
            size_t i = 0;
            for (size_t j = 0; j < outer.size() && i < inner.size(); ++j)
                if (outer[j] == inner[i]) {
                    pos.push_back(static_cast<int>(j));
                    ++i;
                }
            break;
        }
    }
    return pos;
}

}  // namespace convex
