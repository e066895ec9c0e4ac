#pragma once

#include "rough_reduce/rough_core.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace rough_reduce::testing {

// Pawlak's seven-rule table: conditions a, b, c and decision d.
inline DecisionTable pawlak_table() {
    return DecisionTable({{1, 0, 1}, {1, 0, 0}, {0, 0, 0}, {1, 1, 1}, {1, 1, 2}, {2, 1, 2}, {2, 2, 2}},
                         {1, 1, 0, 0, 2, 2, 2}, {}, {"a", "b", "c", "d"});
}

inline DecisionTable random_table(std::mt19937_64& rng, int max_rules = 8, int max_attrs = 4,
                                  int values = 3) {
    std::uniform_int_distribution<int> rules(1, max_rules), attrs(1, max_attrs), code(0, values - 1);
    const int n = rules(rng), m = attrs(rng);
    std::vector<std::vector<Symbol>> conditions(static_cast<std::size_t>(n));
    std::vector<Symbol> decisions;
    for (auto& row : conditions) {
        for (int a = 0; a < m; ++a) row.push_back(code(rng));
        decisions.push_back(code(rng));
    }
    return DecisionTable(std::move(conditions), std::move(decisions));
}

// ---------------------------------------------------------------------------
// Brute-force oracles. They read raw cells only and never call the library's
// partition or reduct machinery.

using Mask = std::uint32_t;

inline bool agree_on(const DecisionTable& t, std::size_t x, std::size_t y, Mask attrs) {
    for (std::size_t a = 0; a < t.attribute_count(); ++a)
        if ((attrs >> a & 1u) && t.value(x, static_cast<AttrId>(a)) != t.value(y, static_cast<AttrId>(a)))
            return false;
    return true;
}

// Rows whose indiscernibility class under `attrs` has a single decision.
inline std::vector<bool> oracle_positive(const DecisionTable& t, Mask attrs) {
    std::vector<bool> pos(t.rule_count(), true);
    for (std::size_t x = 0; x < t.rule_count(); ++x)
        for (std::size_t y = 0; y < t.rule_count(); ++y)
            if (agree_on(t, x, y, attrs) && t.decision(x) != t.decision(y)) pos[x] = false;
    return pos;
}

inline RuleSet oracle_positive_rules(const DecisionTable& t, Mask attrs) {
    const auto pos = oracle_positive(t, attrs);
    RuleSet out;
    for (std::size_t r = 0; r < pos.size(); ++r)
        if (pos[r]) out.push_back(t.rule_at(r));
    std::sort(out.begin(), out.end());
    return out;
}

inline Mask full_mask(const DecisionTable& t) {
    return static_cast<Mask>((1u << t.attribute_count()) - 1u);
}

inline AttributeSet to_set(Mask m) {
    std::vector<AttrId> ids;
    for (AttrId a = 0; a < 32; ++a)
        if (m >> a & 1u) ids.push_back(a);
    return AttributeSet(std::move(ids));
}

// Scans all 2^m subsets; a reduct keeps the full positive region and no
// proper subset does.
inline std::vector<AttributeSet> oracle_reducts(const DecisionTable& t) {
    const Mask full = full_mask(t);
    const auto target = oracle_positive(t, full);
    std::vector<bool> keeps(full + 1u);
    for (Mask s = 0; s <= full; ++s) keeps[s] = oracle_positive(t, s) == target;
    std::vector<AttributeSet> out;
    for (Mask s = 0; s <= full; ++s) {
        if (!keeps[s]) continue;
        bool minimal = true;
        for (Mask sub = (s - 1) & s;; sub = (sub - 1) & s) {
            if (sub != s && keeps[sub]) minimal = false;
            if (sub == 0) break;
        }
        if (s == 0) minimal = true;
        if (minimal) out.push_back(to_set(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rough_reduce::testing
