#include "rough_reduce/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>

namespace rough_reduce {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

MatrixXd encode_targets(const std::vector<int>& labels, Index classes, const TrainConfig& config) {
    MatrixXd out(classes, static_cast<Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        out.col(static_cast<Index>(i)) =
            encode_target(labels[i], classes, config.target_on, config.target_off);
    return out;
}

std::size_t thread_cap() {
    if (const char* env = std::getenv("ROUGH_REDUCE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return 1;
}

} // namespace

std::string to_string(const SelectionStrategy& strategy) {
    std::ostringstream out;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            out.precision(17);
            if constexpr (std::is_same_v<T, strategy::Standard>) out << "standard";
            else if constexpr (std::is_same_v<T, strategy::DropLastFraction>) out << "drop-last " << s.fraction;
            else if constexpr (std::is_same_v<T, strategy::Energy>) out << "energy " << s.threshold;
            else if constexpr (std::is_same_v<T, strategy::Stretch>) out << "stretch " << s.threshold;
            else out << "drop-first";
        },
        strategy);
    return out.str();
}

SelectionStrategy parse_strategy(const std::string& name, double parameter) {
    SelectionStrategy s;
    if (name == "standard") s = strategy::Standard{};
    else if (name == "drop-last") s = strategy::DropLastFraction{parameter};
    else if (name == "energy") s = strategy::Energy{parameter};
    else if (name == "stretch") s = strategy::Stretch{parameter};
    else if (name == "drop-first") s = strategy::DropFirst{};
    else throw Error("unknown selection strategy '" + name + "'");
    validate(s);
    return s;
}

VectorXd PipelineModel::features(const VectorXd& image) const {
    return reduce_vector(selection, project(eigenspace, image));
}

Index PipelineModel::classify(const VectorXd& image) const {
    return rough_reduce::classify(network, features(image));
}

void PipelineModel::check_dimensions() const {
    const auto q = eigenspace.rank();
    const auto selected = static_cast<Index>(selection.selected_indices.size());
    if (eigenspace.basis.rows() != eigenspace.pixels() || eigenspace.basis.cols() != q)
        throw Error("model: eigenspace basis shape does not match mean and eigenvalues");
    if (discretizer.features() != q)
        throw Error("model: discretizer has " + std::to_string(discretizer.features()) +
                    " features, eigenspace has " + std::to_string(q));
    if (selected == 0 || selected > q) throw Error("model: selection size out of range");
    for (auto idx : selection.selected_indices)
        if (idx < 0 || idx >= q) throw Error("model: selected index out of range");
    if (network.sizes.empty() || network.inputs() != selected)
        throw Error("model: network input size does not match the selection");
    if (network.outputs() != static_cast<Index>(class_names.size()))
        throw Error("model: network output size does not match the class count");
}

EvalReport evaluate(const PipelineModel& model, const Dataset& test) {
    const auto start = Clock::now();
    EvalReport report;
    const auto k = static_cast<Index>(model.class_names.size());
    report.confusion = Eigen::MatrixXi::Zero(k, k);
    for (const auto& s : test.samples) {
        const auto predicted = model.classify(s.pixels);
        ++report.confusion(s.label, predicted);
    }
    report.test_size = test.samples.size();
    report.raw_dim = model.eigenspace.pixels();
    report.pca_dim = model.eigenspace.rank();
    report.final_dim = static_cast<Index>(model.selection.selected_indices.size());
    report.bins_used = model.discretizer.bin_count;
    report.provenance = model.selection.provenance;
    report.accuracy = test.samples.empty()
                          ? 0.0
                          : static_cast<double>(report.confusion.trace()) /
                                static_cast<double>(test.samples.size());
    report.timing.eval_ms = elapsed_ms(start);
    return report;
}

PipelineRun run_pipeline(const Dataset& train, const Dataset& test, const PipelineConfig& config) {
    const auto start = Clock::now();
    if (train.samples.empty()) throw Error("run_pipeline: empty training set");
    if (!test.samples.empty() && test.pixels() != train.pixels())
        throw Error("run_pipeline: train and test images differ in size");

    PipelineRun run;
    auto& model = run.model;
    model.class_names = train.class_names;
    model.strategy = config.strategy;
    const auto labels = train.labels();

    auto t = Clock::now();
    const MatrixXd images = train.images();
    auto space = select(fit_eigenspace(images), config.strategy);
    if (config.truncate_q) space = truncate(space, *config.truncate_q);
    if (space.rank() == 0) throw Error("run_pipeline: eigenspace is empty");
    model.eigenspace = std::move(space);
    const MatrixXd projections = project_all(model.eigenspace, images);
    const double fit_ms = elapsed_ms(t);

    t = Clock::now();
    int bins_used = config.bins;
    double consistency = 1.0;
    if (config.use_reduct) {
        auto rough = fit_rough_selection(projections, labels, config.bins, config.max_bins,
                                         config.exhaustive_limit);
        model.discretizer = std::move(rough.discretizer);
        model.selection = rough.outcome.selection;
        bins_used = rough.bins_used;
        consistency = rough.outcome.consistency;
        run.selection = std::move(rough.outcome);
    } else {
        model.discretizer = fit_discretizer(projections, config.bins);
        model.selection.provenance = ReductSource::AllFeatures;
        for (Index i = 0; i < projections.rows(); ++i) model.selection.selected_indices.push_back(i);
    }
    const double select_ms = elapsed_ms(t);

    t = Clock::now();
    TrainConfig tc;
    tc.learning_rate = config.learning_rate;
    tc.max_epochs = config.max_epochs;
    tc.error_threshold = config.error_threshold.value_or(0.01 * static_cast<double>(train.size()));
    tc.seed = config.seed;
    tc.shuffle = config.shuffle;
    const MatrixXd inputs = reduce_all(model.selection, projections);
    const Index hidden = config.hidden.value_or(
        std::max<Index>(5, (inputs.rows() + 1) / 2));
    model.network = init_network({inputs.rows(), hidden, train.classes()}, config.seed);
    auto training = rough_reduce::train(model.network, inputs, encode_targets(labels, train.classes(), tc), tc);
    const double train_ms = elapsed_ms(t);

    model.check_dimensions();
    run.report = evaluate(model, test);
    auto& r = run.report;
    r.timing.fit_ms = fit_ms;
    r.timing.select_ms = select_ms;
    r.timing.train_ms = train_ms;
    r.train_size = train.size();
    r.bins_used = bins_used;
    r.consistency = consistency;
    r.training = std::move(training);
    r.timing.total_ms = elapsed_ms(start);
    return run;
}

std::string format_report(const EvalReport& r) {
    std::ostringstream out;
    out << "accuracy: " << r.accuracy << '\n'
        << "train_size: " << r.train_size << '\n'
        << "test_size: " << r.test_size << '\n'
        << "raw_dim: " << r.raw_dim << '\n'
        << "pca_dim: " << r.pca_dim << '\n'
        << "final_dim: " << r.final_dim << '\n'
        << "reduct: " << to_string(r.provenance) << '\n'
        << "bins: " << r.bins_used << '\n'
        << "consistency: " << r.consistency << '\n';
    if (r.training.epochs > 0) {
        out << "epochs: " << r.training.epochs << '\n'
            << "final_error: " << r.training.final_error << '\n'
            << "converged: " << (r.training.converged ? "yes" : "no") << '\n'
            << "fit_ms: " << r.timing.fit_ms << '\n'
            << "select_ms: " << r.timing.select_ms << '\n'
            << "train_ms: " << r.timing.train_ms << '\n';
    }
    out << "eval_ms: " << r.timing.eval_ms << '\n';
    if (r.training.epochs > 0) out << "total_ms: " << r.timing.total_ms << '\n';
    out << "confusion:";
    for (Index i = 0; i < r.confusion.rows(); ++i) {
        out << (i ? " |" : "");
        for (Index j = 0; j < r.confusion.cols(); ++j) out << ' ' << r.confusion(i, j);
    }
    out << '\n';
    return out.str();
}

std::vector<SweepPoint> sweep_dimensions(const Dataset& train, const Dataset& test,
                                         const std::vector<Index>& q_values,
                                         const PipelineConfig& config) {
    std::vector<SweepPoint> points(q_values.size());
    const auto cap = thread_cap();
    for (std::size_t begin = 0; begin < q_values.size(); begin += cap) {
        const auto end = std::min(q_values.size(), begin + cap);
        std::vector<std::future<double>> jobs;
        for (std::size_t i = begin; i < end; ++i) {
            auto cfg = config;
            cfg.truncate_q = q_values[i];
            jobs.push_back(std::async(cap > 1 ? std::launch::async : std::launch::deferred,
                                      [&train, &test, cfg] {
                                          return run_pipeline(train, test, cfg).report.accuracy;
                                      }));
        }
        for (std::size_t i = begin; i < end; ++i) points[i] = {q_values[i], jobs[i - begin].get()};
    }
    return points;
}

std::string format_sweep_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << "q,accuracy\n";
    for (const auto& p : points) out << p.q << ',' << p.accuracy << '\n';
    return out.str();
}

} // namespace rough_reduce
