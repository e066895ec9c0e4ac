#pragma once

#include "rough_reduce/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace rough_reduce {

struct Sample {
    VectorXd pixels;
    int label = 0;
    std::filesystem::path source;
};

/// Labelled images of equal size; class ids are dense from 0.
struct Dataset {
    std::vector<Sample> samples;
    std::vector<std::string> class_names;
    Index width = 0;
    Index height = 0;

    std::size_t size() const { return samples.size(); }
    Index classes() const { return static_cast<Index>(class_names.size()); }
    Index pixels() const { return width * height; }

    /// N x P matrix, one image per column.
    MatrixXd images() const;
    std::vector<int> labels() const;
};

/// Orders strings with embedded numbers numerically ("s2" before "s10").
bool natural_less(const std::string& lhs, const std::string& rhs);

/// Loads an ORL-style tree: one subdirectory per subject holding `.pgm` files.
/// Subjects and files are taken in natural order; `max_classes` = 0 keeps all.
Dataset load_dataset(const std::filesystem::path& root, std::size_t max_classes = 0);

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::string> warnings;
};

/// Seeded per-class sampling without replacement of `per_class_train` training images.
Split split(const Dataset& data, std::size_t per_class_train, std::uint64_t seed);

} // namespace rough_reduce
