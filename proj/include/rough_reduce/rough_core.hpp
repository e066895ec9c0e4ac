#pragma once

#include "rough_reduce/types.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace rough_reduce {

using RuleId = int;
using AttrId = int;
using Symbol = int;

/// Sorted, duplicate-free list of rule ids.
using RuleSet = std::vector<RuleId>;

/// Default ceiling on condition attributes for exhaustive reduct search.
inline constexpr std::size_t kExhaustiveLimit = 20;

/// Sorted set of condition attribute ids.
///
/// Ordering is by cardinality first, then lexicographic on the sorted ids,
/// which is the order every reduct list is reported in.
class AttributeSet {
public:
    AttributeSet() = default;
    AttributeSet(std::initializer_list<AttrId> ids);
    explicit AttributeSet(std::vector<AttrId> ids);

    bool contains(AttrId a) const;
    AttributeSet with(AttrId a) const;
    AttributeSet without(AttrId a) const;
    bool is_subset_of(const AttributeSet& other) const;

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::vector<AttrId>& ids() const { return ids_; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool operator==(const AttributeSet&) const = default;
    std::strong_ordering operator<=>(const AttributeSet& other) const;

private:
    std::vector<AttrId> ids_;
};

AttributeSet intersect(const AttributeSet& lhs, const AttributeSet& rhs);

/// Objects described by discrete condition attributes and one decision attribute.
///
/// Condition attributes have ids 0..m-1 in column order; the decision attribute
/// has id m. Values are dense non-negative integer codes.
class DecisionTable {
public:
    /// `conditions[r]` holds the condition codes of row r. An empty `universe`
    /// numbers rules 1..n; empty `names` defaults to a, b, c, ... and d.
    DecisionTable(std::vector<std::vector<Symbol>> conditions, std::vector<Symbol> decisions,
                  std::vector<RuleId> universe = {}, std::vector<std::string> names = {});

    std::size_t rule_count() const { return universe_.size(); }
    std::size_t attribute_count() const { return attributes_; }

    const std::vector<RuleId>& universe() const { return universe_; }
    AttributeSet condition_attrs() const;
    AttrId decision_attr() const { return static_cast<AttrId>(attributes_); }

    /// Code of attribute `a` (condition or decision) in row `row`.
    Symbol value(std::size_t row, AttrId a) const;
    Symbol decision(std::size_t row) const { return values_[row * (attributes_ + 1) + attributes_]; }

    std::size_t row_of(RuleId id) const;
    RuleId rule_at(std::size_t row) const { return universe_[row]; }

    /// Names of all attributes, decision last.
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(AttrId a) const;
    AttrId attr_by_name(const std::string& name) const;

    /// Same-condition rules never disagree on the decision.
    bool is_consistent() const;

    /// Copy keeping only the listed condition attributes, renumbered in order.
    DecisionTable restrict_to(const AttributeSet& attrs) const;

    bool operator==(const DecisionTable&) const = default;

private:
    void check_attr(AttrId a) const;

    std::size_t attributes_ = 0;
    std::vector<RuleId> universe_;
    std::vector<std::string> names_;
    std::vector<Symbol> values_;
};

/// Family of disjoint, non-empty blocks covering a universe of rule ids.
class Partition {
public:
    /// Validates and canonicalizes: members sorted, blocks ordered by first member.
    explicit Partition(std::vector<RuleSet> blocks);

    const std::vector<RuleSet>& blocks() const { return blocks_; }
    const RuleSet& universe() const { return universe_; }

    bool operator==(const Partition&) const = default;

private:
    std::vector<RuleSet> blocks_;
    RuleSet universe_;
};

/// Indiscernibility classes over `attrs`, which may include the decision attribute.
Partition partition_by(const DecisionTable& table, const AttributeSet& attrs);

RuleSet lower_approx(const Partition& p, const RuleSet& x);
RuleSet upper_approx(const Partition& p, const RuleSet& x);
RuleSet boundary(const Partition& p, const RuleSet& x);

/// Rules whose `c`-class lies wholly inside one decision class.
RuleSet positive_region(const DecisionTable& table, const AttributeSet& c);
double dependency_degree(const DecisionTable& table, const AttributeSet& c);

bool is_dispensable(const DecisionTable& table, const AttributeSet& q, AttrId a);

/// Every minimal subset of the condition attributes with the full positive region,
/// ordered by size and then lexicographically.
///
/// Throws TooLargeError when the attribute count exceeds `limit`.
std::vector<AttributeSet> relative_reducts(const DecisionTable& table,
                                           std::size_t limit = kExhaustiveLimit);

/// Dependency-gain forward selection followed by a dispensability prune.
AttributeSet greedy_reduct(const DecisionTable& table);

/// Intersection of all relative reducts.
AttributeSet core(const DecisionTable& table, std::size_t limit = kExhaustiveLimit);

/// Per-attribute cell of a reduced rule; `std::nullopt` is a don't-care.
using Cell = std::optional<Symbol>;

/// One decision rule with some condition values replaced by don't-cares.
struct ReducedRule {
    RuleId rule_id = 0;
    std::vector<Cell> cells;
    Symbol decision = 0;

    AttributeSet specified() const;
    /// True when every specified cell agrees with row `row` of `table`.
    bool matches(const DecisionTable& table, std::size_t row) const;
    /// Equal cells and decision, ignoring the rule id.
    bool same_pattern(const ReducedRule& other) const;

    bool operator==(const ReducedRule&) const = default;
};

/// Throws InconsistentTableError naming the first clashing pair of rules.
void require_consistent(const DecisionTable& table);

/// Core values of every rule, in table order.
std::vector<ReducedRule> core_values(const DecisionTable& table);

/// All minimal value reducts of one rule, ordered by size and then lexicographically.
std::vector<ReducedRule> value_reducts(const DecisionTable& table, RuleId rule);

/// Chooses one value reduct per rule; returns an index into each candidate list.
using ReductPicker =
    std::function<std::vector<std::size_t>(const std::vector<std::vector<ReducedRule>>&)>;

/// Prefers the pattern shared by the most rules, then the lexicographically
/// smallest attribute set, then the fewest specified cells.
ReductPicker max_sharing_picker();

struct MinimizedTable {
    /// Deduplicated rules, renumbered 1..k in order of first appearance.
    std::vector<ReducedRule> rules;
    /// Original rule ids merged into each entry of `rules`.
    std::vector<std::vector<RuleId>> sources;
};

MinimizedTable minimize_table(const DecisionTable& table,
                              const ReductPicker& picker = max_sharing_picker());

} // namespace rough_reduce
