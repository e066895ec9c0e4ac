#include "rough_reduce/model_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rough_reduce {

namespace {

constexpr std::string_view kMagic = "rough-reduce-model";

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename Range>
void put_reals(std::ostringstream& out, const Range& values) {
    for (auto v : values) out << ' ' << real(v);
}

ModelFormatError malformed(std::size_t line, const std::string& what) {
    return ModelFormatError(ModelFormatError::Kind::Malformed,
                            "model file, line " + std::to_string(line) + ": " + what);
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Next line split into whitespace tokens; the first must equal `keyword`.
    std::vector<std::string_view> expect(std::string_view keyword) {
        if (pos_ >= text_.size()) throw malformed(line_ + 1, "missing '" + std::string(keyword) + "'");
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        current_ = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++line_;
        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < current_.size()) {
            while (i < current_.size() && current_[i] == ' ') ++i;
            auto start = i;
            while (i < current_.size() && current_[i] != ' ') ++i;
            if (i > start) tokens.push_back(current_.substr(start, i - start));
        }
        if (tokens.empty() || tokens.front() != keyword)
            throw malformed(line_, "expected '" + std::string(keyword) + "'");
        return tokens;
    }

    // Everything after the keyword and one space.
    std::string rest(std::string_view keyword) const {
        return std::string(current_.substr(std::min(current_.size(), keyword.size() + 1)));
    }

    std::size_t line() const { return line_; }
    bool done() const { return pos_ >= text_.size(); }

    template <typename T>
    T number(std::string_view token) const {
        T v{};
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw malformed(line_, "bad number '" + std::string(token) + "'");
        return v;
    }

    template <typename T>
    std::vector<T> numbers(const std::vector<std::string_view>& tokens, std::size_t from,
                           std::size_t count) const {
        if (tokens.size() != from + count)
            throw malformed(line_, "expected " + std::to_string(count) + " values, got " +
                                       std::to_string(tokens.size() - std::min(tokens.size(), from)));
        std::vector<T> out;
        out.reserve(count);
        for (std::size_t i = from; i < tokens.size(); ++i) out.push_back(number<T>(tokens[i]));
        return out;
    }

private:
    std::string_view text_;
    std::string_view current_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

ReductSource parse_source(std::string_view s, std::size_t line) {
    if (s == "exhaustive") return ReductSource::Exhaustive;
    if (s == "greedy") return ReductSource::Greedy;
    if (s == "all") return ReductSource::AllFeatures;
    throw malformed(line, "unknown reduct source '" + std::string(s) + "'");
}

} // namespace

std::string format_model(const PipelineModel& model) {
    model.check_dimensions();
    const auto& space = model.eigenspace;
    std::ostringstream out;
    out << kMagic << " v" << PipelineModel::kFormatVersion << '\n';
    out << "strategy " << to_string(model.strategy) << '\n';
    out << "classes " << model.class_names.size() << '\n';
    for (const auto& name : model.class_names) out << "class " << name << '\n';

    out << "eigenspace " << space.pixels() << ' ' << space.rank() << '\n';
    out << "mean";
    put_reals(out, space.mean);
    out << "\neigenvalues";
    put_reals(out, space.eigenvalues);
    out << '\n';
    for (Index j = 0; j < space.rank(); ++j) {
        out << "basis " << j;
        put_reals(out, space.basis.col(j));
        out << '\n';
    }

    out << "discretizer " << model.discretizer.features() << ' ' << model.discretizer.bin_count << '\n';
    for (std::size_t f = 0; f < model.discretizer.edges.size(); ++f) {
        out << "edges " << f << ' ' << model.discretizer.edges[f].size();
        put_reals(out, model.discretizer.edges[f]);
        out << '\n';
    }

    out << "selection " << to_string(model.selection.provenance) << ' '
        << model.selection.selected_indices.size();
    for (auto i : model.selection.selected_indices) out << ' ' << i;
    out << '\n';

    out << "network " << model.network.sizes.size();
    for (auto s : model.network.sizes) out << ' ' << s;
    out << '\n';
    for (std::size_t l = 0; l < model.network.weights.size(); ++l) {
        const auto& w = model.network.weights[l];
        out << "weights " << l << ' ' << w.rows() << ' ' << w.cols();
        for (Index r = 0; r < w.rows(); ++r)
            for (Index c = 0; c < w.cols(); ++c) out << ' ' << real(w(r, c));
        out << '\n';
    }

    auto body = out.str();
    char sum[32];
    std::snprintf(sum, sizeof sum, "%016" PRIx64, fnv1a(body));
    return body + "checksum " + sum + "\n";
}

PipelineModel parse_model(std::string_view text) {
    const auto first_end = text.find('\n');
    const auto first = text.substr(0, first_end);
    if (first.substr(0, kMagic.size() + 1) != std::string(kMagic) + " ")
        throw malformed(1, "not a model file");
    const auto version = first.substr(kMagic.size() + 1);
    if (version != "v" + std::to_string(PipelineModel::kFormatVersion))
        throw ModelFormatError(ModelFormatError::Kind::UnsupportedVersion,
                               "unsupported version '" + std::string(version) + "'");

    auto trimmed = text;
    if (!trimmed.empty() && trimmed.back() == '\n') trimmed.remove_suffix(1);
    const auto last_nl = trimmed.rfind('\n');
    if (last_nl == std::string_view::npos) throw malformed(1, "missing checksum line");
    const auto checksum_line = trimmed.substr(last_nl + 1);
    const auto body = text.substr(0, last_nl + 1);
    if (checksum_line.substr(0, 9) != "checksum ")
        throw malformed(0, "missing checksum line");
    char expected[32];
    std::snprintf(expected, sizeof expected, "%016" PRIx64, fnv1a(body));
    if (checksum_line.substr(9) != expected)
        throw ModelFormatError(ModelFormatError::Kind::ChecksumMismatch,
                               "checksum mismatch: file says " + std::string(checksum_line.substr(9)) +
                                   ", content hashes to " + expected);

    LineReader in(body);
    in.expect(kMagic);
    PipelineModel model;

    auto tokens = in.expect("strategy");
    if (tokens.size() < 2) throw malformed(in.line(), "missing strategy name");
    model.strategy = parse_strategy(std::string(tokens[1]),
                                    tokens.size() > 2 ? in.number<double>(tokens[2]) : 0.0);

    tokens = in.expect("classes");
    const auto classes = in.numbers<std::size_t>(tokens, 1, 1)[0];
    for (std::size_t c = 0; c < classes; ++c) {
        in.expect("class");
        model.class_names.push_back(in.rest("class"));
    }

    tokens = in.expect("eigenspace");
    const auto dims = in.numbers<Index>(tokens, 1, 2);
    const Index n = dims[0], q = dims[1];
    auto& space = model.eigenspace;
    space.mean = Eigen::Map<const VectorXd>(in.numbers<double>(in.expect("mean"), 1, static_cast<std::size_t>(n)).data(), n);
    space.eigenvalues = Eigen::Map<const VectorXd>(
        in.numbers<double>(in.expect("eigenvalues"), 1, static_cast<std::size_t>(q)).data(), q);
    space.basis.resize(n, q);
    for (Index j = 0; j < q; ++j) {
        tokens = in.expect("basis");
        if (tokens.size() < 2 || in.number<Index>(tokens[1]) != j) throw malformed(in.line(), "basis out of order");
        space.basis.col(j) = Eigen::Map<const VectorXd>(in.numbers<double>(tokens, 2, static_cast<std::size_t>(n)).data(), n);
    }

    tokens = in.expect("discretizer");
    const auto disc = in.numbers<long>(tokens, 1, 2);
    model.discretizer.bin_count = static_cast<int>(disc[1]);
    for (long f = 0; f < disc[0]; ++f) {
        tokens = in.expect("edges");
        if (tokens.size() < 3 || in.number<long>(tokens[1]) != f) throw malformed(in.line(), "edges out of order");
        const auto count = in.number<std::size_t>(tokens[2]);
        model.discretizer.edges.push_back(in.numbers<double>(tokens, 3, count));
    }

    tokens = in.expect("selection");
    if (tokens.size() < 3) throw malformed(in.line(), "truncated selection");
    model.selection.provenance = parse_source(tokens[1], in.line());
    model.selection.selected_indices = in.numbers<Index>(tokens, 3, in.number<std::size_t>(tokens[2]));

    tokens = in.expect("network");
    if (tokens.size() < 2) throw malformed(in.line(), "truncated network");
    model.network.sizes = in.numbers<Index>(tokens, 2, in.number<std::size_t>(tokens[1]));
    for (std::size_t l = 0; l + 1 < model.network.sizes.size(); ++l) {
        tokens = in.expect("weights");
        if (tokens.size() < 4 || in.number<std::size_t>(tokens[1]) != l)
            throw malformed(in.line(), "weights out of order");
        const auto rows = in.number<Index>(tokens[2]);
        const auto cols = in.number<Index>(tokens[3]);
        if (rows != model.network.sizes[l + 1] || cols != model.network.sizes[l] + 1)
            throw malformed(in.line(), "weight matrix shape does not match layer sizes");
        const auto values = in.numbers<double>(tokens, 4, static_cast<std::size_t>(rows * cols));
        model.network.weights.push_back(
            Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                values.data(), rows, cols));
    }
    if (!in.done()) throw malformed(in.line() + 1, "unexpected trailing content");

    try {
        model.check_dimensions();
    } catch (const Error& e) {
        throw ModelFormatError(ModelFormatError::Kind::Malformed, e.what());
    }
    return model;
}

void save_model(const PipelineModel& model, const std::filesystem::path& path) {
    const auto text = format_model(model);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

PipelineModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace rough_reduce
