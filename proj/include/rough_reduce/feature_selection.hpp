#pragma once

#include "rough_reduce/rough_core.hpp"
#include "rough_reduce/types.hpp"

#include <string>
#include <vector>

namespace rough_reduce {

/// Per-feature cut points turning continuous coordinates into bin codes.
struct DiscretizationModel {
    /// edges[f] is strictly ascending; a value's code is the number of edges below it.
    std::vector<std::vector<double>> edges;
    int bin_count = 0;

    Index features() const { return static_cast<Index>(edges.size()); }
    bool operator==(const DiscretizationModel&) const = default;
};

/// Equal-frequency bins per row of `projections` (features x samples).
///
/// Cut points are the linearly interpolated k/bins quantiles, k = 1..bins-1,
/// with duplicates collapsed. A feature with at most `bins` distinct values
/// instead gets one cut midway between each pair of neighbouring values.
DiscretizationModel fit_discretizer(const MatrixXd& projections, int bins);

std::vector<Symbol> discretize(const DiscretizationModel& model, const VectorXd& v);

/// Codes for every column of `projections`, one row of the result per sample.
std::vector<std::vector<Symbol>> discretize_all(const DiscretizationModel& model,
                                                const MatrixXd& projections);

/// One rule per sample; condition attribute j is feature j, named f<j>.
/// Rule ids are the sample indices.
DecisionTable build_decision_table(const std::vector<std::vector<Symbol>>& discretized,
                                   const std::vector<int>& labels);

enum class ReductSource {
    Exhaustive,
    Greedy,
    /// No reduction: every eigen-coordinate kept.
    AllFeatures,
};

std::string to_string(ReductSource source);

struct FeatureSelection {
    /// Ascending eigen-coordinate indices.
    std::vector<Index> selected_indices;
    ReductSource provenance = ReductSource::Exhaustive;

    bool operator==(const FeatureSelection&) const = default;
};

struct SelectionOutcome {
    FeatureSelection selection;
    /// Dependency degree of the decision on all condition attributes.
    double consistency = 1.0;
    /// Per-rule core values and the minimized rule table, both over the selected features.
    DecisionTable reduced_table;
    std::vector<ReducedRule> core_values;
    MinimizedTable minimized;
};

/// Picks the smallest relative reduct (lexicographically first among equals),
/// exhaustively within `limit` attributes and greedily beyond, then minimizes
/// the rule table restricted to it.
SelectionOutcome select_features(const DecisionTable& table, std::size_t limit = kExhaustiveLimit);

VectorXd reduce_vector(const FeatureSelection& selection, const VectorXd& v);

/// Rows `selection.selected_indices` of `projections`.
MatrixXd reduce_all(const FeatureSelection& selection, const MatrixXd& projections);

struct RoughSelection {
    DiscretizationModel discretizer;
    SelectionOutcome outcome;
    int bins_used = 0;
};

/// Discretizes, builds the decision table and selects features. An
/// inconsistent table is retried with two more bins, up to `max_bins`.
RoughSelection fit_rough_selection(const MatrixXd& projections, const std::vector<int>& labels,
                                   int bins = 5, int max_bins = 11,
                                   std::size_t limit = kExhaustiveLimit);

} // namespace rough_reduce
