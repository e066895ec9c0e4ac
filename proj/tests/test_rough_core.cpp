#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rough_reduce/rough_core.hpp"
#include "rough_reduce/table_io.hpp"
#include "support/fixtures.hpp"

#include <random>

using namespace rough_reduce;
using rough_reduce::testing::pawlak_table;

namespace {

ReducedRule rule(RuleId id, std::vector<Cell> cells, Symbol decision) {
    return {id, std::move(cells), decision};
}

constexpr Cell X = std::nullopt;

// Four classes over eight objects x1..x8.
Partition example_one() {
    return Partition({{1, 4, 8}, {2, 5, 7}, {3}, {6}});
}

} // namespace

TEST_CASE("decision table validates its shape") {
    CHECK_THROWS_AS(DecisionTable({}, {}), Error);
    CHECK_THROWS_AS(DecisionTable({{1, 2}, {1}}, {0, 0}), Error);
    CHECK_THROWS_AS(DecisionTable({{1}}, {0, 1}), Error);
    CHECK_THROWS_AS(DecisionTable({{1}, {2}}, {0, 1}, {4, 4}), Error);
    CHECK_THROWS_AS(DecisionTable({{-1}}, {0}), Error);
    CHECK_THROWS_AS(DecisionTable({{1}}, {0}, {}, {"a", "a"}), Error);

    const auto t = pawlak_table();
    CHECK(t.rule_count() == 7);
    CHECK(t.decision_attr() == 3);
    CHECK(t.attr_by_name("b") == 1);
    CHECK(t.value(4, t.attr_by_name("c")) == 2);
    CHECK(t.is_consistent());
}

TEST_CASE("partition_by groups indiscernible rules") {
    const auto t = pawlak_table();
    CHECK(partition_by(t, {0}).blocks() == std::vector<RuleSet>{{1, 2, 4, 5}, {3}, {6, 7}});
    CHECK(partition_by(t, {1}).blocks().front() == RuleSet{1, 2, 3});
    CHECK(partition_by(t, {}).blocks() == std::vector<RuleSet>{{1, 2, 3, 4, 5, 6, 7}});
    CHECK(partition_by(t, {3}).blocks() == std::vector<RuleSet>{{1, 2}, {3, 4}, {5, 6, 7}});
    CHECK_THROWS_WITH_AS(partition_by(t, {7}), doctest::Contains("7"), Error);
}

TEST_CASE("partition rejects overlapping or empty blocks") {
    CHECK_THROWS_AS(Partition({{1, 2}, {2, 3}}), Error);
    CHECK_THROWS_AS(Partition({{1}, {}}), Error);
    CHECK(Partition({{3, 1}, {2}}) == Partition({{2}, {1, 3}}));
}

TEST_CASE("approximations on an eight-object partition") {
    const auto p = example_one();
    const RuleSet x{3, 6, 8};
    CHECK(lower_approx(p, x) == RuleSet{3, 6});
    CHECK(upper_approx(p, x) == RuleSet{1, 3, 4, 6, 8});
    CHECK(boundary(p, x) == RuleSet{1, 4, 8});

    const auto all = p.universe();
    CHECK(lower_approx(p, all) == all);
    CHECK(upper_approx(p, all) == all);
    CHECK(lower_approx(p, {}).empty());
    CHECK(upper_approx(p, {}).empty());

    CHECK(boundary(p, {1, 4, 8, 3}).empty());
    CHECK(boundary(Partition(std::vector<RuleSet>{{5}}), {5}).empty());
    CHECK_THROWS_AS(lower_approx(p, {9}), Error);
    CHECK_THROWS_AS(upper_approx(p, {0}), Error);
    CHECK_THROWS_AS(boundary(p, {42}), Error);
}

TEST_CASE("positive region and dependency on the Pawlak table") {
    const auto t = pawlak_table();
    CHECK(positive_region(t, {0, 1, 2}) == RuleSet{1, 2, 3, 4, 5, 6, 7});
    CHECK(positive_region(t, {0}) == RuleSet{3, 6, 7});
    CHECK(dependency_degree(t, {0, 1, 2}) == 1.0);
    CHECK(dependency_degree(t, {0}) == doctest::Approx(3.0 / 7.0));
    CHECK(dependency_degree(t, {}) == 0.0);

    const DecisionTable constant({{0, 1}, {1, 0}, {2, 2}}, {4, 4, 4});
    CHECK(positive_region(constant, {}) == RuleSet{1, 2, 3});
    CHECK(positive_region(constant, {1}) == RuleSet{1, 2, 3});
}

TEST_CASE("dispensability is partition equality") {
    const auto t = pawlak_table();
    // Dropping c merges rules 4 and 5 ((1,1,*)), so c is indispensable in {a,b,c}.
    CHECK_FALSE(is_dispensable(t, {0, 1, 2}, 2));
    CHECK(is_dispensable(t, {0, 1, 2}, 2) ==
          (partition_by(t, {0, 1, 2}) == partition_by(t, {0, 1})));
    CHECK_FALSE(is_dispensable(t, {0}, 0));

    const DecisionTable dup({{0, 0, 1}, {1, 1, 1}, {2, 2, 0}}, {0, 1, 0});
    CHECK(is_dispensable(dup, {0, 1}, 1));
    CHECK(is_dispensable(dup, {0, 1}, 0));
    CHECK_THROWS_AS(is_dispensable(dup, {0}, 1), Error);
}

TEST_CASE("relative reducts and core") {
    const auto t = pawlak_table();
    CHECK(relative_reducts(t) == rough_reduce::testing::oracle_reducts(t));
    CHECK(relative_reducts(t) == std::vector<AttributeSet>{{0, 1, 2}});
    CHECK(core(t) == AttributeSet{0, 1, 2});

    const DecisionTable single({{0}, {1}, {1}}, {0, 1, 1});
    CHECK(relative_reducts(single) == std::vector<AttributeSet>{{0}});
    CHECK(core(single) == AttributeSet{0});

    const DecisionTable twins({{0, 0}, {1, 1}, {2, 2}}, {0, 1, 0});
    CHECK(relative_reducts(twins) == std::vector<AttributeSet>{{0}, {1}});
    CHECK(core(twins).empty());
}

TEST_CASE("relative reducts refuse tables over the exhaustive limit") {
    std::vector<std::vector<Symbol>> rows(2, std::vector<Symbol>(21, 0));
    rows[1][20] = 1;
    const DecisionTable wide(rows, {0, 1});
    CHECK_THROWS_AS(relative_reducts(wide), TooLargeError);
    CHECK_THROWS_AS(core(wide), TooLargeError);
    CHECK(relative_reducts(wide, 21) == std::vector<AttributeSet>{{20}});
    CHECK(greedy_reduct(wide) == AttributeSet{20});
}

TEST_CASE("greedy reduct") {
    const DecisionTable constant({{0, 1}, {1, 0}}, {3, 3});
    CHECK(greedy_reduct(constant).empty());

    const DecisionTable determined({{0, 5}, {1, 5}, {0, 6}, {1, 6}}, {0, 1, 0, 1});
    CHECK(greedy_reduct(determined) == AttributeSet{0});

    // XOR: no single attribute raises the dependency, both are needed.
    const DecisionTable xor_table({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0});
    CHECK(greedy_reduct(xor_table) == AttributeSet{0, 1});
}

TEST_CASE("core values of the Pawlak table") {
    const auto t = pawlak_table();
    const std::vector<ReducedRule> expected{
        rule(1, {X, 0, X}, 1), rule(2, {1, X, X}, 1), rule(3, {0, X, X}, 0), rule(4, {X, 1, 1}, 0),
        rule(5, {X, X, 2}, 2), rule(6, {X, X, X}, 2), rule(7, {X, X, X}, 2),
    };
    CHECK(core_values(t) == expected);

    const DecisionTable one({{3, 4}}, {1});
    CHECK(core_values(one) == std::vector<ReducedRule>{rule(1, {X, X}, 1)});

    const DecisionTable clash({{0, 1}, {0, 1}}, {0, 1});
    CHECK_THROWS_AS(core_values(clash), InconsistentTableError);
    try {
        core_values(clash);
    } catch (const InconsistentTableError& e) {
        CHECK(std::string(e.what()).find("rules 1 and 2") != std::string::npos);
        CHECK(e.consistency() == 0.0);
    }
}

TEST_CASE("value reducts of every Pawlak rule") {
    const auto t = pawlak_table();
    CHECK(value_reducts(t, 1) == std::vector<ReducedRule>{rule(1, {1, 0, X}, 1), rule(1, {X, 0, 1}, 1)});
    CHECK(value_reducts(t, 2) == std::vector<ReducedRule>{rule(2, {1, 0, X}, 1), rule(2, {1, X, 0}, 1)});
    CHECK(value_reducts(t, 3) == std::vector<ReducedRule>{rule(3, {0, X, X}, 0)});
    CHECK(value_reducts(t, 4) == std::vector<ReducedRule>{rule(4, {X, 1, 1}, 0)});
    CHECK(value_reducts(t, 5) == std::vector<ReducedRule>{rule(5, {X, X, 2}, 2)});
    CHECK(value_reducts(t, 6) == std::vector<ReducedRule>{rule(6, {2, X, X}, 2), rule(6, {X, X, 2}, 2)});
    CHECK(value_reducts(t, 7) ==
          std::vector<ReducedRule>{rule(7, {2, X, X}, 2), rule(7, {X, 2, X}, 2), rule(7, {X, X, 2}, 2)});
    CHECK_THROWS_AS(value_reducts(t, 8), Error);
}

TEST_CASE("minimize_table merges Pawlak rules into four") {
    const auto t = pawlak_table();
    const auto minimal = minimize_table(t);
    CHECK(minimal.rules == std::vector<ReducedRule>{rule(1, {1, 0, X}, 1), rule(2, {0, X, X}, 0),
                                                    rule(3, {X, 1, 1}, 0), rule(4, {X, X, 2}, 2)});
    CHECK(minimal.sources == std::vector<std::vector<RuleId>>{{1, 2}, {3}, {4}, {5, 6, 7}});

    std::size_t solutions = 1;
    for (auto id : t.universe()) solutions *= value_reducts(t, id).size();
    CHECK(solutions == 24);

    // Any picker yields a correct table; always taking the last reduct still merges 5, 6, 7.
    const auto last = minimize_table(t, [](const auto& candidates) {
        std::vector<std::size_t> out;
        for (const auto& c : candidates) out.push_back(c.size() - 1);
        return out;
    });
    CHECK(last.rules.size() == 5);

    const DecisionTable clash({{0}, {0}}, {0, 1});
    CHECK_THROWS_AS(minimize_table(clash), InconsistentTableError);
}

TEST_CASE("minimize_table on an already minimal table equals its core values") {
    // Each rule needs exactly its own single distinguishing value.
    const DecisionTable t({{0, 0}, {1, 0}, {0, 1}}, {0, 1, 2});
    const auto core = core_values(t);
    const auto minimal = minimize_table(t);
    REQUIRE(minimal.rules.size() == core.size());
    for (std::size_t i = 0; i < core.size(); ++i) CHECK(minimal.rules[i].same_pattern(core[i]));
}

TEST_CASE("rough-set invariants on random tables") {
    using namespace rough_reduce::testing;
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 300; ++trial) {
        const auto t = random_table(rng);
        const auto all = t.condition_attrs();
        const auto full = full_mask(t);

        // lower ⊆ X ⊆ upper, boundary = upper − lower
        for (Mask s = 0; s <= full; ++s) {
            const auto p = partition_by(t, to_set(s));
            RuleSet x;
            for (auto id : t.universe())
                if (rng() & 1u) x.push_back(id);
            const auto lower = lower_approx(p, x), upper = upper_approx(p, x);
            CHECK(std::includes(x.begin(), x.end(), lower.begin(), lower.end()));
            CHECK(std::includes(upper.begin(), upper.end(), x.begin(), x.end()));
            RuleSet diff;
            std::set_difference(upper.begin(), upper.end(), lower.begin(), lower.end(),
                                std::back_inserter(diff));
            CHECK(boundary(p, x) == diff);

            CHECK(positive_region(t, to_set(s)) == oracle_positive_rules(t, s));
            for (auto a : all) {
                if (s >> a & 1u) continue;
                CHECK(dependency_degree(t, to_set(s | (1u << a))) >= dependency_degree(t, to_set(s)));
            }
        }

        const auto reducts = relative_reducts(t);
        CHECK(reducts == oracle_reducts(t));

        AttributeSet by_removal;
        const auto pos_all = positive_region(t, all);
        for (auto a : all)
            if (positive_region(t, all.without(a)) != pos_all) by_removal = by_removal.with(a);
        CHECK(core(t) == by_removal);

        if (!t.is_consistent()) continue;
        const auto cores = core_values(t);
        for (std::size_t r = 0; r < t.rule_count(); ++r)
            for (const auto& vr : value_reducts(t, t.rule_at(r)))
                CHECK(cores[r].specified().is_subset_of(vr.specified()));

        const auto minimal = minimize_table(t);
        for (const auto& m : minimal.rules)
            for (std::size_t r = 0; r < t.rule_count(); ++r)
                if (m.matches(t, r)) CHECK(m.decision == t.decision(r));
    }
}

TEST_CASE("decision table text format") {
    const auto t = pawlak_table();
    const std::string text = "attrs: a b c | d\n"
                             "1 0 1 1\n1 0 0 1\n0 0 0 0\n1 1 1 0\n1 1 2 2\n2 1 2 2\n2 2 2 2\n";
    CHECK(format_table(t) == text);
    CHECK(parse_table(text) == t);

    const DecisionTable custom({{0, 1}, {2, 3}}, {1, 0}, {7, 3}, {"f0", "f1", "class"});
    const auto custom_text = format_table(custom);
    CHECK(custom_text == "attrs: f0 f1 | class\nrules: 7 3\n0 1 1\n2 3 0\n");
    CHECK(parse_table(custom_text) == custom);
    CHECK(format_table(parse_table(custom_text)) == custom_text);

    const auto minimal = minimize_table(t);
    const auto reduced_text = format_reduced(t.names(), minimal.rules);
    CHECK(reduced_text == "attrs: a b c | d\n1 0 x 1\n0 x x 0\nx 1 1 0\nx x 2 2\n");
    const auto back = parse_reduced(reduced_text);
    CHECK(back.names == t.names());
    CHECK(back.rules == minimal.rules);

    CHECK_THROWS_AS(parse_table("a b | d\n0 1\n"), Error);
    CHECK_THROWS_AS(parse_table("attrs: a b d\n0 1 1\n"), Error);
    CHECK_THROWS_AS(parse_table("attrs: a | d\n0\n"), Error);
    CHECK_THROWS_AS(parse_table("attrs: a | d\n0 -1\n"), Error);
    CHECK_THROWS_AS(parse_table("attrs: a | d\n0 x\n"), Error);
    CHECK_THROWS_AS(parse_table("attrs: a | d\n"), Error);
    CHECK_THROWS_WITH_AS(parse_table("attrs: a | d\n0 1\n0 1 1\n"), doctest::Contains("line 3"), Error);
}

TEST_CASE("table text round-trips random tables") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const auto t = rough_reduce::testing::random_table(rng, 10, 6, 5);
        const auto text = format_table(t);
        CHECK(parse_table(text) == t);
        CHECK(format_table(parse_table(text)) == text);
    }
}
