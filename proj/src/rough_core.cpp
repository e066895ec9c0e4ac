#include "rough_reduce/rough_core.hpp"

#include "bit_mask.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace rough_reduce {

using detail::BitMask;

// ---------------------------------------------------------------------------
// AttributeSet

AttributeSet::AttributeSet(std::initializer_list<AttrId> ids)
    : AttributeSet(std::vector<AttrId>(ids)) {}

AttributeSet::AttributeSet(std::vector<AttrId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool AttributeSet::contains(AttrId a) const {
    return std::binary_search(ids_.begin(), ids_.end(), a);
}

AttributeSet AttributeSet::with(AttrId a) const {
    auto ids = ids_;
    ids.push_back(a);
    return AttributeSet(std::move(ids));
}

AttributeSet AttributeSet::without(AttrId a) const {
    auto ids = ids_;
    ids.erase(std::remove(ids.begin(), ids.end(), a), ids.end());
    AttributeSet out;
    out.ids_ = std::move(ids);
    return out;
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

std::strong_ordering AttributeSet::operator<=>(const AttributeSet& other) const {
    if (auto c = ids_.size() <=> other.ids_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(ids_.begin(), ids_.end(), other.ids_.begin(),
                                                  other.ids_.end());
}

AttributeSet intersect(const AttributeSet& lhs, const AttributeSet& rhs) {
    std::vector<AttrId> out;
    std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
    return AttributeSet(std::move(out));
}

// ---------------------------------------------------------------------------
// DecisionTable

DecisionTable::DecisionTable(std::vector<std::vector<Symbol>> conditions,
                             std::vector<Symbol> decisions, std::vector<RuleId> universe,
                             std::vector<std::string> names) {
    if (conditions.empty()) throw Error("decision table: universe is empty");
    if (decisions.size() != conditions.size())
        throw Error("decision table: " + std::to_string(conditions.size()) + " rows but " +
                    std::to_string(decisions.size()) + " decisions");
    attributes_ = conditions.front().size();
    for (std::size_t r = 0; r < conditions.size(); ++r)
        if (conditions[r].size() != attributes_)
            throw Error("decision table: row " + std::to_string(r) + " has " +
                        std::to_string(conditions[r].size()) + " condition values, expected " +
                        std::to_string(attributes_));

    if (universe.empty()) {
        universe.resize(conditions.size());
        std::iota(universe.begin(), universe.end(), 1);
    }
    if (universe.size() != conditions.size())
        throw Error("decision table: universe size does not match row count");
    {
        std::set<RuleId> seen;
        for (auto id : universe) {
            if (id < 0) throw Error("decision table: negative rule id " + std::to_string(id));
            if (!seen.insert(id).second)
                throw Error("decision table: duplicate rule id " + std::to_string(id));
        }
    }
    universe_ = std::move(universe);

    if (names.empty()) {
        for (std::size_t a = 0; a < attributes_; ++a) names.push_back("c" + std::to_string(a));
        names.push_back("d");
    }
    if (names.size() != attributes_ + 1)
        throw Error("decision table: expected " + std::to_string(attributes_ + 1) +
                    " attribute names, got " + std::to_string(names.size()));
    {
        std::set<std::string> seen;
        for (const auto& n : names)
            if (n.empty() || !seen.insert(n).second)
                throw Error("decision table: attribute names must be unique and non-empty ('" +
                            n + "')");
    }
    names_ = std::move(names);

    values_.reserve(conditions.size() * (attributes_ + 1));
    for (std::size_t r = 0; r < conditions.size(); ++r) {
        for (auto v : conditions[r]) {
            if (v < 0) throw Error("decision table: negative code in row " + std::to_string(r));
            values_.push_back(v);
        }
        if (decisions[r] < 0)
            throw Error("decision table: negative decision in row " + std::to_string(r));
        values_.push_back(decisions[r]);
    }
}

AttributeSet DecisionTable::condition_attrs() const {
    std::vector<AttrId> ids(attributes_);
    std::iota(ids.begin(), ids.end(), 0);
    return AttributeSet(std::move(ids));
}

void DecisionTable::check_attr(AttrId a) const {
    if (a < 0 || static_cast<std::size_t>(a) > attributes_)
        throw Error("unknown attribute id " + std::to_string(a));
}

Symbol DecisionTable::value(std::size_t row, AttrId a) const {
    check_attr(a);
    return values_[row * (attributes_ + 1) + static_cast<std::size_t>(a)];
}

std::size_t DecisionTable::row_of(RuleId id) const {
    auto it = std::find(universe_.begin(), universe_.end(), id);
    if (it == universe_.end()) throw Error("rule " + std::to_string(id) + " is not in the universe");
    return static_cast<std::size_t>(it - universe_.begin());
}

const std::string& DecisionTable::name(AttrId a) const {
    check_attr(a);
    return names_[static_cast<std::size_t>(a)];
}

AttrId DecisionTable::attr_by_name(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error("unknown attribute '" + name + "'");
    return static_cast<AttrId>(it - names_.begin());
}

bool DecisionTable::is_consistent() const {
    return positive_region(*this, condition_attrs()).size() == rule_count();
}

DecisionTable DecisionTable::restrict_to(const AttributeSet& attrs) const {
    for (auto a : attrs)
        if (a < 0 || static_cast<std::size_t>(a) >= attributes_)
            throw Error("unknown condition attribute id " + std::to_string(a));
    std::vector<std::vector<Symbol>> conditions(rule_count());
    std::vector<Symbol> decisions(rule_count());
    for (std::size_t r = 0; r < rule_count(); ++r) {
        for (auto a : attrs) conditions[r].push_back(value(r, a));
        decisions[r] = decision(r);
    }
    std::vector<std::string> names;
    for (auto a : attrs) names.push_back(names_[static_cast<std::size_t>(a)]);
    names.push_back(names_.back());
    return DecisionTable(std::move(conditions), std::move(decisions), universe_, std::move(names));
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::vector<RuleSet> blocks) : blocks_(std::move(blocks)) {
    for (auto& b : blocks_) {
        if (b.empty()) throw Error("partition: empty block");
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw Error("partition: repeated member in a block");
        universe_.insert(universe_.end(), b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const RuleSet& l, const RuleSet& r) { return l.front() < r.front(); });
    std::sort(universe_.begin(), universe_.end());
    if (auto it = std::adjacent_find(universe_.begin(), universe_.end()); it != universe_.end())
        throw Error("partition: blocks overlap on rule " + std::to_string(*it));
}

namespace {

// Dense class label per row for the indiscernibility relation over `attrs`.
std::vector<int> class_labels(const DecisionTable& table, const AttributeSet& attrs) {
    const auto n = table.rule_count();
    std::vector<int> labels(n, 0);
    for (auto a : attrs) {
        std::map<std::pair<int, Symbol>, int> relabel;
        for (std::size_t r = 0; r < n; ++r) {
            auto [it, inserted] = relabel.try_emplace({labels[r], table.value(r, a)},
                                                      static_cast<int>(relabel.size()));
            labels[r] = it->second;
        }
    }
    return labels;
}

// Row-index mask of the positive region of `c`.
BitMask positive_mask(const DecisionTable& table, const AttributeSet& c) {
    const auto n = table.rule_count();
    const auto labels = class_labels(table, c);
    const auto classes = static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
    std::vector<Symbol> first(classes, -1);
    std::vector<char> mixed(classes, 0);
    for (std::size_t r = 0; r < n; ++r) {
        auto l = static_cast<std::size_t>(labels[r]);
        if (first[l] < 0)
            first[l] = table.decision(r);
        else if (first[l] != table.decision(r))
            mixed[l] = 1;
    }
    BitMask pos(n);
    for (std::size_t r = 0; r < n; ++r)
        if (!mixed[static_cast<std::size_t>(labels[r])]) pos.set(r);
    return pos;
}

RuleSet to_rules(const DecisionTable& table, const BitMask& rows) {
    RuleSet out;
    rows.for_each([&](std::size_t r) { out.push_back(table.rule_at(r)); });
    std::sort(out.begin(), out.end());
    return out;
}

AttributeSet to_attrs(const BitMask& mask) {
    std::vector<AttrId> ids;
    mask.for_each([&](std::size_t i) { ids.push_back(static_cast<AttrId>(i)); });
    return AttributeSet(std::move(ids));
}

RuleSet normalized_subset(const Partition& p, RuleSet x) {
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    for (auto id : x)
        if (!std::binary_search(p.universe().begin(), p.universe().end(), id))
            throw Error("rule " + std::to_string(id) + " is not in the partition's universe");
    return x;
}

RuleSet merge_sorted(const RuleSet& a, const RuleSet& b) {
    RuleSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Partition partition_by(const DecisionTable& table, const AttributeSet& attrs) {
    for (auto a : attrs)
        if (a < 0 || a > table.decision_attr())
            throw Error("partition_by: unknown attribute id " + std::to_string(a));
    const auto labels = class_labels(table, attrs);
    std::map<int, RuleSet> blocks;
    for (std::size_t r = 0; r < table.rule_count(); ++r)
        blocks[labels[r]].push_back(table.rule_at(r));
    std::vector<RuleSet> out;
    for (auto& [label, members] : blocks) out.push_back(std::move(members));
    return Partition(std::move(out));
}

RuleSet lower_approx(const Partition& p, const RuleSet& x) {
    const auto target = normalized_subset(p, x);
    RuleSet out;
    for (const auto& block : p.blocks())
        if (std::includes(target.begin(), target.end(), block.begin(), block.end()))
            out = merge_sorted(out, block);
    return out;
}

RuleSet upper_approx(const Partition& p, const RuleSet& x) {
    const auto target = normalized_subset(p, x);
    RuleSet out;
    for (const auto& block : p.blocks()) {
        const bool touches = std::any_of(block.begin(), block.end(), [&](RuleId id) {
            return std::binary_search(target.begin(), target.end(), id);
        });
        if (touches) out = merge_sorted(out, block);
    }
    return out;
}

RuleSet boundary(const Partition& p, const RuleSet& x) {
    const auto upper = upper_approx(p, x);
    const auto lower = lower_approx(p, x);
    RuleSet out;
    std::set_difference(upper.begin(), upper.end(), lower.begin(), lower.end(),
                        std::back_inserter(out));
    return out;
}

RuleSet positive_region(const DecisionTable& table, const AttributeSet& c) {
    for (auto a : c)
        if (a < 0 || a >= table.decision_attr())
            throw Error("positive_region: unknown condition attribute id " + std::to_string(a));
    return to_rules(table, positive_mask(table, c));
}

double dependency_degree(const DecisionTable& table, const AttributeSet& c) {
    return static_cast<double>(positive_region(table, c).size()) /
           static_cast<double>(table.rule_count());
}

bool is_dispensable(const DecisionTable& table, const AttributeSet& q, AttrId a) {
    if (!q.contains(a))
        throw Error("is_dispensable: attribute " + std::to_string(a) + " is not in the set");
    return partition_by(table, q) == partition_by(table, q.without(a));
}

// ---------------------------------------------------------------------------
// Reducts

namespace detail {

namespace {

std::vector<BitMask> drop_supersets(std::vector<BitMask> sets) {
    std::sort(sets.begin(), sets.end(), [](const BitMask& l, const BitMask& r) {
        const auto lc = l.count(), rc = r.count();
        return lc != rc ? lc < rc : l < r;
    });
    std::vector<BitMask> kept;
    for (auto& s : sets) {
        const bool covered = std::any_of(kept.begin(), kept.end(),
                                         [&](const BitMask& k) { return k.is_subset_of(s); });
        if (!covered) kept.push_back(std::move(s));
    }
    return kept;
}

} // namespace

std::vector<BitMask> minimal_transversals(std::vector<BitMask> family, std::size_t bits) {
    family = drop_supersets(std::move(family));
    std::vector<BitMask> transversals{BitMask(bits)};
    for (const auto& edge : family) {
        std::vector<BitMask> next;
        for (const auto& t : transversals) {
            if (t.intersects(edge)) {
                next.push_back(t);
                continue;
            }
            edge.for_each([&](std::size_t a) {
                auto extended = t;
                extended.set(a);
                next.push_back(std::move(extended));
            });
        }
        transversals = drop_supersets(std::move(next));
    }
    return transversals;
}

} // namespace detail

std::vector<AttributeSet> relative_reducts(const DecisionTable& table, std::size_t limit) {
    const auto m = table.attribute_count();
    if (m > limit) throw TooLargeError(m, limit);

    // A subset keeps the positive region iff it discerns every pair with
    // different decisions where at least one side is C-positive.
    const auto n = table.rule_count();
    const auto pos = positive_mask(table, table.condition_attrs());
    std::vector<BitMask> family;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (table.decision(i) == table.decision(j) || !(pos.test(i) || pos.test(j))) continue;
            BitMask differ(m);
            for (std::size_t a = 0; a < m; ++a)
                if (table.value(i, static_cast<AttrId>(a)) != table.value(j, static_cast<AttrId>(a)))
                    differ.set(a);
            family.push_back(std::move(differ));
        }
    }

    std::vector<AttributeSet> reducts;
    for (const auto& t : detail::minimal_transversals(std::move(family), m))
        reducts.push_back(to_attrs(t));
    std::sort(reducts.begin(), reducts.end());
    return reducts;
}

AttributeSet greedy_reduct(const DecisionTable& table) {
    const auto all = table.condition_attrs();
    const auto target = positive_mask(table, all).count();

    AttributeSet chosen;
    auto covered = positive_mask(table, chosen).count();
    while (covered < target) {
        AttrId best = -1;
        std::size_t best_covered = 0;
        for (auto a : all) {
            if (chosen.contains(a)) continue;
            const auto c = positive_mask(table, chosen.with(a)).count();
            if (best < 0 || c > best_covered) {
                best = a;
                best_covered = c;
            }
        }
        chosen = chosen.with(best);
        covered = best_covered;
    }

    for (auto a : std::vector<AttrId>(chosen.ids())) {
        const auto trial = chosen.without(a);
        if (positive_mask(table, trial).count() == target) chosen = trial;
    }
    return chosen;
}

AttributeSet core(const DecisionTable& table, std::size_t limit) {
    const auto reducts = relative_reducts(table, limit);
    auto out = reducts.front();
    for (const auto& r : reducts) out = intersect(out, r);
    return out;
}

// ---------------------------------------------------------------------------
// Per-rule core values and value reducts

AttributeSet ReducedRule::specified() const {
    std::vector<AttrId> ids;
    for (std::size_t a = 0; a < cells.size(); ++a)
        if (cells[a]) ids.push_back(static_cast<AttrId>(a));
    return AttributeSet(std::move(ids));
}

bool ReducedRule::matches(const DecisionTable& table, std::size_t row) const {
    for (std::size_t a = 0; a < cells.size(); ++a)
        if (cells[a] && *cells[a] != table.value(row, static_cast<AttrId>(a))) return false;
    return true;
}

bool ReducedRule::same_pattern(const ReducedRule& other) const {
    return cells == other.cells && decision == other.decision;
}

void require_consistent(const DecisionTable& table) {
    std::map<std::vector<Symbol>, std::size_t> seen;
    const auto m = table.attribute_count();
    for (std::size_t r = 0; r < table.rule_count(); ++r) {
        std::vector<Symbol> key(m);
        for (std::size_t a = 0; a < m; ++a) key[a] = table.value(r, static_cast<AttrId>(a));
        auto [it, inserted] = seen.try_emplace(std::move(key), r);
        if (!inserted && table.decision(it->second) != table.decision(r)) {
            std::ostringstream msg;
            msg << "inconsistent decision table: rules " << table.rule_at(it->second) << " and "
                << table.rule_at(r) << " share condition values but have decisions "
                << table.decision(it->second) << " and " << table.decision(r);
            throw InconsistentTableError(msg.str(),
                                         dependency_degree(table, table.condition_attrs()));
        }
    }
}

namespace {

ReducedRule rule_with(const DecisionTable& table, std::size_t row, const BitMask& keep) {
    ReducedRule out;
    out.rule_id = table.rule_at(row);
    out.decision = table.decision(row);
    out.cells.resize(table.attribute_count());
    keep.for_each([&](std::size_t a) { out.cells[a] = table.value(row, static_cast<AttrId>(a)); });
    return out;
}

} // namespace

std::vector<ReducedRule> core_values(const DecisionTable& table) {
    require_consistent(table);
    const auto n = table.rule_count();
    const auto m = table.attribute_count();

    std::vector<ReducedRule> out;
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<BitMask> category(m, BitMask(n));
        BitMask decision_class(n);
        for (std::size_t y = 0; y < n; ++y) {
            for (std::size_t a = 0; a < m; ++a)
                if (table.value(y, static_cast<AttrId>(a)) == table.value(x, static_cast<AttrId>(a)))
                    category[a].set(y);
            if (table.decision(y) == table.decision(x)) decision_class.set(y);
        }
        BitMask keep(m);
        for (std::size_t a = 0; a < m; ++a) {
            auto rest = BitMask::all(n);
            for (std::size_t b = 0; b < m; ++b)
                if (b != a) rest &= category[b];
            if (!rest.is_subset_of(decision_class)) keep.set(a);
        }
        out.push_back(rule_with(table, x, keep));
    }
    return out;
}

std::vector<ReducedRule> value_reducts(const DecisionTable& table, RuleId rule) {
    const auto x = table.row_of(rule);
    const auto m = table.attribute_count();

    // A value subset implies the decision iff it separates the rule from every
    // rule of another decision class.
    std::vector<BitMask> family;
    for (std::size_t y = 0; y < table.rule_count(); ++y) {
        if (table.decision(y) == table.decision(x)) continue;
        BitMask differ(m);
        for (std::size_t a = 0; a < m; ++a)
            if (table.value(y, static_cast<AttrId>(a)) != table.value(x, static_cast<AttrId>(a)))
                differ.set(a);
        if (differ.none()) {
            std::ostringstream msg;
            msg << "inconsistent decision table: rules " << rule << " and " << table.rule_at(y)
                << " share condition values but have decisions " << table.decision(x) << " and "
                << table.decision(y);
            throw InconsistentTableError(msg.str(),
                                         dependency_degree(table, table.condition_attrs()));
        }
        family.push_back(std::move(differ));
    }

    std::vector<ReducedRule> out;
    for (const auto& t : detail::minimal_transversals(std::move(family), m))
        out.push_back(rule_with(table, x, t));
    std::sort(out.begin(), out.end(), [](const ReducedRule& l, const ReducedRule& r) {
        return l.specified() < r.specified();
    });
    return out;
}

ReductPicker max_sharing_picker() {
    return [](const std::vector<std::vector<ReducedRule>>& candidates) {
        std::vector<std::size_t> choice;
        choice.reserve(candidates.size());
        for (const auto& options : candidates) {
            if (options.empty()) throw Error("picker: rule without value reducts");
            auto sharing = [&](const ReducedRule& pattern) {
                std::size_t count = 0;
                for (const auto& other : candidates)
                    count += std::any_of(other.begin(), other.end(), [&](const ReducedRule& r) {
                        return r.same_pattern(pattern);
                    });
                return count;
            };
            // Highest sharing, then lexicographically smallest attribute ids,
            // then fewest specified cells.
            auto rank = [&](const ReducedRule& r) {
                const auto attrs = r.specified();
                return std::tuple(-static_cast<long>(sharing(r)), attrs.ids(), attrs.size());
            };
            std::size_t best = 0;
            auto best_rank = rank(options[0]);
            for (std::size_t i = 1; i < options.size(); ++i) {
                auto r = rank(options[i]);
                if (r < best_rank) {
                    best = i;
                    best_rank = std::move(r);
                }
            }
            choice.push_back(best);
        }
        return choice;
    };
}

MinimizedTable minimize_table(const DecisionTable& table, const ReductPicker& picker) {
    require_consistent(table);
    std::vector<std::vector<ReducedRule>> candidates;
    for (auto id : table.universe()) candidates.push_back(value_reducts(table, id));

    const auto choice = picker(candidates);
    if (choice.size() != candidates.size())
        throw Error("picker returned " + std::to_string(choice.size()) + " choices for " +
                    std::to_string(candidates.size()) + " rules");

    MinimizedTable out;
    for (std::size_t r = 0; r < candidates.size(); ++r) {
        if (choice[r] >= candidates[r].size())
            throw Error("picker chose a missing reduct for rule " + std::to_string(table.rule_at(r)));
        const auto& picked = candidates[r][choice[r]];
        auto it = std::find_if(out.rules.begin(), out.rules.end(),
                               [&](const ReducedRule& k) { return k.same_pattern(picked); });
        if (it == out.rules.end()) {
            out.rules.push_back(picked);
            out.sources.push_back({table.rule_at(r)});
        } else {
            out.sources[static_cast<std::size_t>(it - out.rules.begin())].push_back(table.rule_at(r));
        }
    }
    for (std::size_t k = 0; k < out.rules.size(); ++k) out.rules[k].rule_id = static_cast<RuleId>(k + 1);

    for (std::size_t row = 0; row < table.rule_count(); ++row)
        for (const auto& rule : out.rules)
            if (rule.matches(table, row) && rule.decision != table.decision(row))
                throw Error("minimized rule " + std::to_string(rule.rule_id) + " misclassifies rule " +
                            std::to_string(table.rule_at(row)));
    return out;
}

} // namespace rough_reduce
