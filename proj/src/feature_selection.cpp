#include "rough_reduce/feature_selection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rough_reduce {

namespace {

double quantile(const std::vector<double>& sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

DiscretizationModel fit_discretizer(const MatrixXd& projections, int bins) {
    if (projections.cols() == 0) throw Error("fit_discretizer: no samples");
    if (bins < 2) throw Error("fit_discretizer: at least 2 bins are required");
    if (!projections.allFinite()) throw Error("fit_discretizer: non-finite value");

    DiscretizationModel model;
    model.bin_count = bins;
    for (Index f = 0; f < projections.rows(); ++f) {
        std::vector<double> values(projections.row(f).begin(), projections.row(f).end());
        std::sort(values.begin(), values.end());
        std::vector<double> distinct = values;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        std::vector<double> edges;
        if (distinct.size() <= static_cast<std::size_t>(bins)) {
            for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
                edges.push_back(distinct[i] + (distinct[i + 1] - distinct[i]) / 2);
        } else {
            for (int k = 1; k < bins; ++k) {
                const double cut = quantile(values, static_cast<double>(k) / bins);
                if (edges.empty() || cut > edges.back()) edges.push_back(cut);
            }
        }
        model.edges.push_back(std::move(edges));
    }
    return model;
}

std::vector<Symbol> discretize(const DiscretizationModel& model, const VectorXd& v) {
    if (v.size() != model.features())
        throw Error("discretize: vector has " + std::to_string(v.size()) + " features, model has " +
                    std::to_string(model.features()));
    std::vector<Symbol> codes(static_cast<std::size_t>(v.size()));
    for (Index f = 0; f < v.size(); ++f) {
        const auto& edges = model.edges[static_cast<std::size_t>(f)];
        codes[static_cast<std::size_t>(f)] =
            static_cast<Symbol>(std::lower_bound(edges.begin(), edges.end(), v(f)) - edges.begin());
    }
    return codes;
}

std::vector<std::vector<Symbol>> discretize_all(const DiscretizationModel& model,
                                                const MatrixXd& projections) {
    std::vector<std::vector<Symbol>> out;
    out.reserve(static_cast<std::size_t>(projections.cols()));
    for (Index c = 0; c < projections.cols(); ++c) out.push_back(discretize(model, projections.col(c)));
    return out;
}

DecisionTable build_decision_table(const std::vector<std::vector<Symbol>>& discretized,
                                   const std::vector<int>& labels) {
    if (discretized.size() != labels.size())
        throw Error("build_decision_table: " + std::to_string(discretized.size()) + " samples but " +
                    std::to_string(labels.size()) + " labels");
    if (discretized.empty()) throw Error("build_decision_table: no samples");
    std::vector<RuleId> universe(discretized.size());
    for (std::size_t i = 0; i < universe.size(); ++i) universe[i] = static_cast<RuleId>(i);
    std::vector<std::string> names;
    for (std::size_t f = 0; f < discretized.front().size(); ++f) names.push_back("f" + std::to_string(f));
    names.push_back("class");
    return DecisionTable(discretized, labels, std::move(universe), std::move(names));
}

std::string to_string(ReductSource source) {
    switch (source) {
    case ReductSource::Exhaustive: return "exhaustive";
    case ReductSource::Greedy: return "greedy";
    case ReductSource::AllFeatures: return "all";
    }
    return "unknown";
}

SelectionOutcome select_features(const DecisionTable& table, std::size_t limit) {
    SelectionOutcome out{.selection = {},
                         .consistency = dependency_degree(table, table.condition_attrs()),
                         .reduced_table = table,
                         .core_values = {},
                         .minimized = {}};
    require_consistent(table);

    AttributeSet reduct;
    if (table.attribute_count() <= limit) {
        // relative_reducts is sorted by size then lexicographically.
        reduct = relative_reducts(table, limit).front();
        out.selection.provenance = ReductSource::Exhaustive;
    } else {
        reduct = greedy_reduct(table);
        out.selection.provenance = ReductSource::Greedy;
    }
    if (reduct.empty())
        throw Error("decision constant: every sample has the same class, no feature is needed");

    for (auto a : reduct) out.selection.selected_indices.push_back(a);
    out.reduced_table = table.restrict_to(reduct);
    out.core_values = core_values(out.reduced_table);
    out.minimized = minimize_table(out.reduced_table);
    return out;
}

VectorXd reduce_vector(const FeatureSelection& selection, const VectorXd& v) {
    VectorXd out(static_cast<Index>(selection.selected_indices.size()));
    for (std::size_t i = 0; i < selection.selected_indices.size(); ++i) {
        const auto idx = selection.selected_indices[i];
        if (idx < 0 || idx >= v.size())
            throw Error("reduce_vector: index " + std::to_string(idx) + " out of range for length " +
                        std::to_string(v.size()));
        out(static_cast<Index>(i)) = v(idx);
    }
    return out;
}

MatrixXd reduce_all(const FeatureSelection& selection, const MatrixXd& projections) {
    MatrixXd out(static_cast<Index>(selection.selected_indices.size()), projections.cols());
    for (std::size_t i = 0; i < selection.selected_indices.size(); ++i) {
        const auto idx = selection.selected_indices[i];
        if (idx < 0 || idx >= projections.rows())
            throw Error("reduce_all: index " + std::to_string(idx) + " out of range");
        out.row(static_cast<Index>(i)) = projections.row(idx);
    }
    return out;
}

RoughSelection fit_rough_selection(const MatrixXd& projections, const std::vector<int>& labels,
                                   int bins, int max_bins, std::size_t limit) {
    if (std::set<int>(labels.begin(), labels.end()).size() < 2)
        throw Error("decision constant: training data has a single class");
    for (int b = bins;; b += 2) {
        auto model = fit_discretizer(projections, b);
        auto table = build_decision_table(discretize_all(model, projections), labels);
        if (!table.is_consistent() && b + 2 <= max_bins) continue;
        return {std::move(model), select_features(table, limit), b};
    }
}

} // namespace rough_reduce
