#include "rough_reduce/model_io.hpp"
#include "rough_reduce/pipeline.hpp"
#include "rough_reduce/rough_core.hpp"
#include "rough_reduce/table_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace rough_reduce;

namespace {

struct DataOptions {
    std::string data_dir;
    std::size_t subjects = 0;
    std::size_t per_class_train = 5;
    std::uint64_t seed = 1;
};

struct ModelOptions {
    int bins = 5;
    std::string strategy = "standard";
    double energy = 0.9;
    double stretch = 0.01;
    double drop_fraction = 0.4;
    double eta = 0.5;
    int epochs = 5000;
    Index hidden = 0;
    bool all_features = false;
    bool shuffle = false;
};

void add_data_options(CLI::App* cmd, DataOptions& d) {
    cmd->add_option("--data-dir", d.data_dir, "Root holding one subdirectory of .pgm images per subject")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--subjects", d.subjects, "Use only the first N subjects (0 = all)");
    cmd->add_option("--per-class-train", d.per_class_train, "Training images per subject")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", d.seed, "Seed for the split, weight init and shuffling");
}

void add_model_options(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--bins", m.bins, "Initial discretization bins")->check(CLI::Range(2, 1000));
    cmd->add_option("--strategy", m.strategy, "Eigenvector selection")
        ->check(CLI::IsMember({"standard", "drop-last", "energy", "stretch", "drop-first"}));
    cmd->add_option("--energy-threshold", m.energy, "Cumulative eigenvalue share for --strategy energy");
    cmd->add_option("--stretch-threshold", m.stretch, "Eigenvalue ratio for --strategy stretch");
    cmd->add_option("--drop-fraction", m.drop_fraction, "Fraction removed by --strategy drop-last");
    cmd->add_option("--eta", m.eta, "MLP learning rate");
    cmd->add_option("--epochs", m.epochs, "Maximum training epochs")->check(CLI::PositiveNumber);
    cmd->add_option("--hidden", m.hidden, "Hidden units (default max(5, ceil(inputs/2)))");
    cmd->add_flag("--all-features", m.all_features, "Skip rough-set selection and use every eigen-coordinate");
    cmd->add_flag("--shuffle", m.shuffle, "Shuffle sample order every epoch");
}

PipelineConfig make_config(const DataOptions& d, const ModelOptions& m) {
    PipelineConfig c;
    double parameter = 0;
    if (m.strategy == "energy") parameter = m.energy;
    else if (m.strategy == "stretch") parameter = m.stretch;
    else if (m.strategy == "drop-last") parameter = m.drop_fraction;
    c.strategy = parse_strategy(m.strategy, parameter);
    c.bins = m.bins;
    c.max_bins = std::max(m.bins, 11);
    c.use_reduct = !m.all_features;
    c.learning_rate = m.eta;
    c.max_epochs = m.epochs;
    if (m.hidden > 0) c.hidden = m.hidden;
    c.seed = d.seed;
    c.shuffle = m.shuffle;
    return c;
}

Split load_split(const DataOptions& d) {
    auto parts = split(load_dataset(d.data_dir, d.subjects), d.per_class_train, d.seed);
    for (const auto& w : parts.warnings) std::cerr << "warning: " << w << '\n';
    return parts;
}

void print_rules(const DecisionTable& table, const std::vector<ReducedRule>& rules) {
    std::cout << format_reduced(table.names(), rules);
}

std::string pattern(const DecisionTable& table, const ReducedRule& r) {
    std::string out = "{";
    for (std::size_t a = 0; a < r.cells.size(); ++a)
        if (r.cells[a])
            out += (out.size() > 1 ? "," : "") + table.name(static_cast<AttrId>(a)) + "=" + std::to_string(*r.cells[a]);
    return out + "}";
}

std::string set_names(const DecisionTable& table, const AttributeSet& s) {
    std::string out = "{";
    for (auto a : s) out += (out.size() > 1 ? "," : "") + table.name(a);
    return out + "}";
}

void inspect(const DecisionTable& table, std::size_t limit) {
    std::cout << "# table\n" << format_table(table);
    std::cout << "\n# dependency\n";
    std::cout << "gamma: " << dependency_degree(table, table.condition_attrs()) << '\n';
    std::cout << "consistent: " << (table.is_consistent() ? "yes" : "no") << '\n';

    std::cout << "\n# reducts\n";
    if (table.attribute_count() <= limit) {
        for (const auto& r : relative_reducts(table, limit)) std::cout << set_names(table, r) << '\n';
        std::cout << "core: " << set_names(table, core(table, limit)) << '\n';
    } else {
        std::cout << "greedy: " << set_names(table, greedy_reduct(table)) << '\n';
    }
    if (!table.is_consistent()) return;

    std::cout << "\n# core values\n";
    print_rules(table, core_values(table));
    std::cout << "\n# value reducts\n";
    std::size_t solutions = 1;
    for (auto id : table.universe()) {
        const auto reducts = value_reducts(table, id);
        solutions *= reducts.size();
        std::cout << "rule " << id << ":";
        for (const auto& r : reducts) std::cout << ' ' << pattern(table, r);
        std::cout << " -> " << table.name(table.decision_attr()) << '=' << reducts.front().decision << '\n';
    }
    std::cout << "solutions: " << solutions << '\n';

    const auto minimal = minimize_table(table);
    std::cout << "\n# minimized\n";
    print_rules(table, minimal.rules);
    for (std::size_t i = 0; i < minimal.sources.size(); ++i) {
        std::cout << "rule " << minimal.rules[i].rule_id << " covers";
        for (auto id : minimal.sources[i]) std::cout << ' ' << id;
        std::cout << '\n';
    }
}

DecisionTable example_table(const std::string& name) {
    if (name != "pawlak") throw Error("unknown example '" + name + "' (available: pawlak)");
    return DecisionTable({{1, 0, 1}, {1, 0, 0}, {0, 0, 0}, {1, 1, 1}, {1, 1, 2}, {2, 1, 2}, {2, 2, 2}},
                         {1, 1, 0, 0, 2, 2, 2}, {}, {"a", "b", "c", "d"});
}

std::vector<Index> parse_q_list(const std::string& text) {
    std::vector<Index> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        const auto item = text.substr(pos, end - pos);
        std::size_t used = 0;
        long v = -1;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
        }
        if (used != item.size() || v < 1) throw Error("bad --q entry '" + item + "'");
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rough-set feature reduction for eigenface classification"};
    app.require_subcommand(1);

    DataOptions data;
    ModelOptions model;

    auto* train_cmd = app.add_subcommand("train", "Fit the pipeline on a split and report test accuracy");
    add_data_options(train_cmd, data);
    add_model_options(train_cmd, model);
    std::string model_out;
    train_cmd->add_option("--model-out", model_out, "Write the fitted model here");

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a saved model on the test split");
    add_data_options(eval_cmd, data);
    std::string model_in;
    eval_cmd->add_option("--model-in", model_in, "Model file from `train --model-out`")
        ->required()
        ->check(CLI::ExistingFile);

    auto* sweep_cmd = app.add_subcommand("sweep", "Accuracy as a function of eigenspace dimension");
    add_data_options(sweep_cmd, data);
    add_model_options(sweep_cmd, model);
    std::string q_list = "5,10,20,40";
    std::string csv_path;
    sweep_cmd->add_option("--q", q_list, "Comma-separated eigenspace sizes");
    sweep_cmd->add_option("--csv", csv_path, "Write the CSV here instead of stdout");

    auto* inspect_cmd = app.add_subcommand("inspect", "Reducts, cores and the minimized rules of a decision table");
    std::string table_path, example;
    std::size_t limit = kExhaustiveLimit;
    auto* table_opt = inspect_cmd->add_option("--table", table_path, "Decision table text file")
                          ->check(CLI::ExistingFile);
    auto* example_opt = inspect_cmd->add_option("--example", example, "Built-in table: pawlak");
    table_opt->excludes(example_opt);
    inspect_cmd->add_option("--exhaustive-limit", limit, "Largest attribute count searched exhaustively");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train_cmd) {
            const auto parts = load_split(data);
            const auto run = run_pipeline(parts.train, parts.test, make_config(data, model));
            std::cout << format_report(run.report);
            if (!model_out.empty()) save_model(run.model, model_out);
        } else if (*eval_cmd) {
            const auto saved = load_model(model_in);
            const auto parts = load_split(data);
            if (parts.test.class_names != saved.class_names)
                throw Error("dataset subjects do not match the model's classes");
            std::cout << format_report(evaluate(saved, parts.test));
        } else if (*sweep_cmd) {
            const auto parts = load_split(data);
            const auto csv = format_sweep_csv(
                sweep_dimensions(parts.train, parts.test, parse_q_list(q_list), make_config(data, model)));
            if (csv_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(csv_path);
                if (!out) throw Error("cannot write " + csv_path);
                out << csv;
            }
        } else if (*inspect_cmd) {
            if (table_path.empty() && example.empty()) throw Error("inspect needs --table or --example");
            inspect(table_path.empty() ? example_table(example) : read_table(table_path), limit);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
