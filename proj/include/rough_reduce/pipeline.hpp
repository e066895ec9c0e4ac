#pragma once

#include "rough_reduce/dataset.hpp"
#include "rough_reduce/eigenspace.hpp"
#include "rough_reduce/feature_selection.hpp"
#include "rough_reduce/mlp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rough_reduce {

std::string to_string(const SelectionStrategy& strategy);

/// Parses "standard", "drop-last", "energy", "stretch" or "drop-first";
/// `parameter` is the fraction or threshold for the strategies that take one.
SelectionStrategy parse_strategy(const std::string& name, double parameter = 0);

struct PipelineConfig {
    SelectionStrategy strategy = strategy::Standard{};
    int bins = 5;
    int max_bins = 11;
    std::size_t exhaustive_limit = kExhaustiveLimit;
    /// false feeds every post-PCA coordinate to the classifier.
    bool use_reduct = true;
    /// Keeps only the first q eigenvectors after the selection strategy.
    std::optional<Index> truncate_q;

    double learning_rate = 0.5;
    int max_epochs = 5000;
    /// Defaults to 0.01 per training sample.
    std::optional<double> error_threshold;
    /// Defaults to max(5, ceil(inputs / 2)).
    std::optional<Index> hidden;
    std::uint64_t seed = 1;
    bool shuffle = false;
};

/// Everything needed to classify a raw image.
struct PipelineModel {
    static constexpr int kFormatVersion = 1;

    Eigenspace<double> eigenspace;
    SelectionStrategy strategy = strategy::Standard{};
    DiscretizationModel discretizer;
    FeatureSelection selection;
    Mlp<double> network;
    std::vector<std::string> class_names;

    /// Reduced continuous eigen-coordinates of `image`.
    VectorXd features(const VectorXd& image) const;
    Index classify(const VectorXd& image) const;
    /// Throws unless Q = discretizer features >= |selection| = network inputs.
    void check_dimensions() const;
};

struct Timing {
    double fit_ms = 0;
    double select_ms = 0;
    double train_ms = 0;
    double eval_ms = 0;
    double total_ms = 0;
};

struct EvalReport {
    double accuracy = 0;
    /// Rows are true classes, columns predicted classes.
    Eigen::MatrixXi confusion;
    Timing timing;
    Index raw_dim = 0;
    Index pca_dim = 0;
    Index final_dim = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    int bins_used = 0;
    double consistency = 1.0;
    ReductSource provenance = ReductSource::Exhaustive;
    TrainResult training;
};

struct PipelineRun {
    PipelineModel model;
    EvalReport report;
    /// Present when rough-set selection ran.
    std::optional<SelectionOutcome> selection;
};

PipelineRun run_pipeline(const Dataset& train, const Dataset& test, const PipelineConfig& config);

/// Accuracy and confusion of `model` on `test`; timing covers evaluation only.
EvalReport evaluate(const PipelineModel& model, const Dataset& test);

/// Plain `key: value` lines.
std::string format_report(const EvalReport& report);

struct SweepPoint {
    Index q = 0;
    double accuracy = 0;
};

/// Reruns the pipeline with the eigenspace truncated to each q. Points run
/// concurrently, at most ROUGH_REDUCE_THREADS at a time (default 1).
std::vector<SweepPoint> sweep_dimensions(const Dataset& train, const Dataset& test,
                                         const std::vector<Index>& q_values,
                                         const PipelineConfig& config);

/// `q,accuracy` header then one row per point.
std::string format_sweep_csv(const std::vector<SweepPoint>& points);

} // namespace rough_reduce
