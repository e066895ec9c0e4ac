#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rough_reduce/eigenspace.hpp"
#include "rough_reduce/feature_selection.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <random>

using namespace rough_reduce;

namespace {

MatrixXd row(std::initializer_list<double> v) {
    MatrixXd m(1, static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) m(0, i++) = x;
    return m;
}

// Type-7 quantile of an already sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

} // namespace

TEST_CASE("discretizer on one to six with three bins") {
    const auto model = fit_discretizer(row({1, 2, 3, 4, 5, 6}), 3);
    REQUIRE(model.features() == 1);
    REQUIRE(model.edges[0].size() == 2);
    CHECK(model.edges[0][0] == doctest::Approx(8.0 / 3.0));
    CHECK(model.edges[0][1] == doctest::Approx(13.0 / 3.0));
    CHECK(model.bin_count == 3);

    VectorXd v(1);
    v << 2;
    CHECK(discretize(model, v) == std::vector<Symbol>{0});
    v << 5;
    CHECK(discretize(model, v) == std::vector<Symbol>{2});
    v << -100;
    CHECK(discretize(model, v) == std::vector<Symbol>{0});
    v << 100;
    CHECK(discretize(model, v) == std::vector<Symbol>{2});
    v << 8.0 / 3.0;
    CHECK(discretize(model, v) == std::vector<Symbol>{0});
}

TEST_CASE("constant and few-valued features") {
    const auto constant = fit_discretizer(row({4, 4, 4, 4}), 5);
    CHECK(constant.edges[0].empty());
    VectorXd v(1);
    v << 4;
    CHECK(discretize(constant, v) == std::vector<Symbol>{0});
    v << 9;
    CHECK(discretize(constant, v) == std::vector<Symbol>{0});

    // Three distinct values, five bins: each value its own code.
    const auto few = fit_discretizer(row({0, 0, 0, 0, 0, 0, 1, 10}), 5);
    CHECK(few.edges[0] == std::vector<double>{0.5, 5.5});
    const auto codes = discretize_all(few, row({0, 1, 10}));
    CHECK(codes == std::vector<std::vector<Symbol>>{{0}, {1}, {2}});
}

TEST_CASE("discretizer rejects bad arguments") {
    CHECK_THROWS_AS(fit_discretizer(MatrixXd(2, 0), 3), Error);
    CHECK_THROWS_AS(fit_discretizer(row({1, 2}), 1), Error);
    const auto model = fit_discretizer(MatrixXd::Random(3, 10), 4);
    CHECK_THROWS_AS(discretize(model, VectorXd::Zero(2)), Error);
}

TEST_CASE("discretizer matches a quantile oracle and preserves order") {
    std::mt19937_64 rng(3);
    std::lognormal_distribution<double> skewed(0.0, 1.5);
    for (int bins : {2, 3, 5, 7, 11}) {
        MatrixXd x(4, 60);
        for (auto& v : x.reshaped()) v = skewed(rng) - 2.0;
        const auto model = fit_discretizer(x, bins);
        for (Index f = 0; f < x.rows(); ++f) {
            std::vector<double> sorted(x.row(f).begin(), x.row(f).end());
            std::sort(sorted.begin(), sorted.end());
            std::vector<double> expected;
            for (int k = 1; k < bins; ++k) {
                const double q = quantile(sorted, static_cast<double>(k) / bins);
                if (expected.empty() || q > expected.back()) expected.push_back(q);
            }
            REQUIRE(model.edges[static_cast<std::size_t>(f)].size() == expected.size());
            for (std::size_t e = 0; e < expected.size(); ++e)
                CHECK(model.edges[static_cast<std::size_t>(f)][e] == doctest::Approx(expected[e]));
            CHECK(std::is_sorted(model.edges[static_cast<std::size_t>(f)].begin(),
                                 model.edges[static_cast<std::size_t>(f)].end()));
        }

        const auto codes = discretize_all(model, x);
        REQUIRE(codes.size() == 60);
        for (std::size_t a = 0; a < codes.size(); ++a) {
            for (std::size_t f = 0; f < 4; ++f) {
                CHECK(codes[a][f] >= 0);
                CHECK(codes[a][f] < bins);
                for (std::size_t b = 0; b < codes.size(); ++b)
                    if (x(static_cast<Index>(f), static_cast<Index>(a)) <= x(static_cast<Index>(f), static_cast<Index>(b)))
                        CHECK(codes[a][f] <= codes[b][f]);
            }
        }
    }
}

TEST_CASE("build_decision_table") {
    const auto t = build_decision_table({{0, 1, 2}, {2, 1, 0}}, {1, 0});
    CHECK(t.rule_count() == 2);
    CHECK(t.attribute_count() == 3);
    CHECK(t.universe() == std::vector<RuleId>{0, 1});
    CHECK(t.names() == std::vector<std::string>{"f0", "f1", "f2", "class"});
    CHECK(t.decision(0) == 1);

    const auto dup = build_decision_table({{1, 1}, {1, 1}}, {3, 3});
    CHECK(dup.is_consistent());
    CHECK(dependency_degree(dup, dup.condition_attrs()) == 1.0);

    const auto clash = build_decision_table({{1, 1}, {1, 1}, {0, 1}}, {3, 2, 2});
    CHECK_FALSE(clash.is_consistent());
    CHECK(dependency_degree(clash, clash.condition_attrs()) == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(build_decision_table({{1}}, {0, 1}), Error);
}

TEST_CASE("select_features on the Pawlak table") {
    const auto t = rough_reduce::testing::pawlak_table();
    const auto out = select_features(t);
    const auto oracle = rough_reduce::testing::oracle_reducts(t);
    CHECK(out.selection.selected_indices == std::vector<Index>{0, 1, 2});
    CHECK(oracle.front().ids() == std::vector<AttrId>{0, 1, 2});
    CHECK(out.selection.provenance == ReductSource::Exhaustive);
    CHECK(out.consistency == 1.0);
    CHECK(out.minimized.rules.size() == 4);
    CHECK(out.core_values.size() == 7);
}

TEST_CASE("select_features simple cases") {
    const auto first = build_decision_table({{0, 1}, {1, 1}, {0, 0}, {1, 0}}, {0, 1, 0, 1});
    CHECK(select_features(first).selection.selected_indices == std::vector<Index>{0});

    const auto xor_table = build_decision_table({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {0, 1, 1, 0});
    CHECK(select_features(xor_table).selection.selected_indices == std::vector<Index>{0, 1});

    // Two equally small reducts: the lexicographically first wins.
    const auto twins = build_decision_table({{0, 0, 5}, {1, 1, 5}}, {0, 1});
    CHECK(select_features(twins).selection.selected_indices == std::vector<Index>{0});

    const auto clash = build_decision_table({{0}, {0}, {1}}, {0, 1, 1});
    try {
        select_features(clash);
        FAIL("expected InconsistentTableError");
    } catch (const InconsistentTableError& e) {
        CHECK(e.consistency() == doctest::Approx(1.0 / 3.0));
    }

    const auto constant = build_decision_table({{0}, {1}}, {4, 4});
    CHECK_THROWS_AS(select_features(constant), Error);
}

TEST_CASE("select_features falls back to greedy above the limit") {
    std::vector<std::vector<Symbol>> rows{std::vector<Symbol>(6, 0), std::vector<Symbol>(6, 0)};
    rows[1][4] = 1;
    const auto t = build_decision_table(rows, {0, 1});
    const auto exhaustive = select_features(t);
    CHECK(exhaustive.selection.provenance == ReductSource::Exhaustive);
    const auto greedy = select_features(t, 3);
    CHECK(greedy.selection.provenance == ReductSource::Greedy);
    CHECK(greedy.selection.selected_indices == std::vector<Index>{4});
    CHECK(to_string(ReductSource::Greedy) == "greedy");
}

TEST_CASE("selected features preserve and minimally preserve the positive region") {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto t = rough_reduce::testing::random_table(rng, 10, 5, 3);
        if (!t.is_consistent()) continue;
        if (partition_by(t, {t.decision_attr()}).blocks().size() < 2) continue;
        ++checked;
        const auto sel = select_features(t).selection;
        const AttributeSet chosen(std::vector<AttrId>(sel.selected_indices.begin(), sel.selected_indices.end()));
        const auto full = positive_region(t, t.condition_attrs());
        CHECK(positive_region(t, chosen) == full);
        for (auto a : chosen) CHECK(positive_region(t, chosen.without(a)).size() < full.size());
        // Smallest cardinality among all oracle reducts.
        const auto oracle = rough_reduce::testing::oracle_reducts(t);
        CHECK(chosen == oracle.front());
    }
    CHECK(checked > 100);
}

TEST_CASE("reduce_vector") {
    VectorXd v(3);
    v << 3, 5, 7;
    CHECK(reduce_vector({{0}, ReductSource::Exhaustive}, v) == VectorXd::Constant(1, 3));
    CHECK(reduce_vector({{0, 1, 2}, ReductSource::AllFeatures}, v) == v);
    CHECK(reduce_vector({{0, 2}, ReductSource::Exhaustive}, v) == (VectorXd(2) << 3, 7).finished());
    CHECK_THROWS_AS(reduce_vector({{3}, ReductSource::Exhaustive}, v), Error);
}

TEST_CASE("reduce after project equals extraction from the full projection") {
    MatrixXd images = MatrixXd::Random(40, 12);
    const auto space = fit_eigenspace(images);
    const FeatureSelection sel{{1, 4, 6}, ReductSource::Exhaustive};
    const auto all = project_all(space, images);
    const auto reduced = reduce_all(sel, all);
    for (Index p = 0; p < images.cols(); ++p) {
        const VectorXd direct = project(space, VectorXd(images.col(p)));
        CHECK(reduce_vector(sel, direct).isApprox(reduced.col(p)));
        CHECK(reduced(1, p) == doctest::Approx(all(4, p)));
    }
}

TEST_CASE("fit_rough_selection retries with more bins") {
    // Classes interleave finely along feature 0, so two bins collide.
    MatrixXd x(1, 8);
    x << 1, 2, 3, 4, 5, 6, 7, 8;
    const std::vector<int> labels{0, 0, 1, 1, 0, 0, 1, 1};
    const auto fit = fit_rough_selection(x, labels, 2, 11);
    CHECK(fit.bins_used > 2);
    CHECK(fit.outcome.consistency == 1.0);
    CHECK(fit.outcome.selection.selected_indices == std::vector<Index>{0});

    CHECK_THROWS_AS(fit_rough_selection(x, labels, 2, 3), InconsistentTableError);
    CHECK_THROWS_AS(fit_rough_selection(x, std::vector<int>(8, 0)), Error);

    const auto again = fit_rough_selection(x, labels, 2, 11);
    CHECK(again.outcome.selection == fit.outcome.selection);
    CHECK(again.discretizer == fit.discretizer);
}
