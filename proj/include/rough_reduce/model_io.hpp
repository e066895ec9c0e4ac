#pragma once

#include "rough_reduce/pipeline.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace rough_reduce {

class ModelFormatError : public Error {
public:
    enum class Kind { UnsupportedVersion, ChecksumMismatch, Malformed };

    ModelFormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Versioned text serialization. The first line is `rough-reduce-model v1`,
/// reals are written with 17 significant digits, and the last line holds an
/// FNV-1a 64-bit checksum of every preceding byte.
std::string format_model(const PipelineModel& model);
PipelineModel parse_model(std::string_view text);

void save_model(const PipelineModel& model, const std::filesystem::path& path);
PipelineModel load_model(const std::filesystem::path& path);

} // namespace rough_reduce
