#include "rough_reduce/dataset.hpp"

#include "rough_reduce/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace rough_reduce {

MatrixXd Dataset::images() const {
    MatrixXd out(pixels(), static_cast<Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) out.col(static_cast<Index>(i)) = samples[i].pixels;
    return out;
}

std::vector<int> Dataset::labels() const {
    std::vector<int> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.label);
    return out;
}

bool natural_less(const std::string& lhs, const std::string& rhs) {
    std::size_t i = 0, j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < lhs.size() && j < rhs.size()) {
        if (digit(lhs[i]) && digit(rhs[j])) {
            auto si = i, sj = j;
            while (si < lhs.size() && lhs[si] == '0') ++si;
            while (sj < rhs.size() && rhs[sj] == '0') ++sj;
            auto ei = si, ej = sj;
            while (ei < lhs.size() && digit(lhs[ei])) ++ei;
            while (ej < rhs.size() && digit(rhs[ej])) ++ej;
            if (ei - si != ej - sj) return ei - si < ej - sj;
            if (auto c = lhs.compare(si, ei - si, rhs, sj, ej - sj); c != 0) return c < 0;
            i = ei;
            j = ej;
        } else {
            if (lhs[i] != rhs[j]) return lhs[i] < rhs[j];
            ++i;
            ++j;
        }
    }
    return lhs.size() - i < rhs.size() - j;
}

Dataset load_dataset(const std::filesystem::path& root, std::size_t max_classes) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw Error("data directory not found: " + root.string());

    std::vector<fs::path> subjects;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) subjects.push_back(entry.path());
    std::sort(subjects.begin(), subjects.end(), [](const fs::path& a, const fs::path& b) {
        return natural_less(a.filename().string(), b.filename().string());
    });

    Dataset data;
    for (const auto& dir : subjects) {
        if (max_classes && data.class_names.size() == max_classes) break;
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
        if (files.empty()) continue;
        std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
            return natural_less(a.filename().string(), b.filename().string());
        });

        const int label = static_cast<int>(data.class_names.size());
        data.class_names.push_back(dir.filename().string());
        for (const auto& file : files) {
            auto img = load_pgm(file);
            if (data.samples.empty()) {
                data.width = img.width;
                data.height = img.height;
            } else if (img.width != data.width || img.height != data.height) {
                throw Error(file.string() + " is " + std::to_string(img.width) + "x" +
                            std::to_string(img.height) + ", expected " + std::to_string(data.width) +
                            "x" + std::to_string(data.height));
            }
            data.samples.push_back({std::move(img.pixels), label, file});
        }
    }
    if (data.samples.empty()) throw Error("no .pgm images found under " + root.string());
    return data;
}

Split split(const Dataset& data, std::size_t per_class_train, std::uint64_t seed) {
    if (per_class_train == 0) throw Error("split: per_class_train must be at least 1");
    Split out;
    for (auto* part : {&out.train, &out.test}) {
        part->class_names = data.class_names;
        part->width = data.width;
        part->height = data.height;
    }

    std::mt19937_64 rng(seed);
    for (Index c = 0; c < data.classes(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < data.samples.size(); ++i)
            if (data.samples[i].label == c) members.push_back(i);
        std::shuffle(members.begin(), members.end(), rng);
        if (members.size() < per_class_train)
            out.warnings.push_back("class " + data.class_names[static_cast<std::size_t>(c)] + " has only " +
                                   std::to_string(members.size()) + " images");
        const auto cut = std::min(per_class_train, members.size());
        std::sort(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(cut));
        std::sort(members.begin() + static_cast<std::ptrdiff_t>(cut), members.end());
        for (std::size_t k = 0; k < members.size(); ++k)
            (k < cut ? out.train : out.test).samples.push_back(data.samples[members[k]]);
    }
    if (out.test.samples.empty()) out.warnings.push_back("test set is empty");
    return out;
}

} // namespace rough_reduce
