#pragma once

#include "rough_reduce/types.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rough_reduce {

/// 8-bit grayscale image, intensities scaled to [0, 1] and flattened row-major.
struct PgmImage {
    Index width = 0;
    Index height = 0;
    VectorXd pixels;
};

class PgmError : public Error {
public:
    enum class Kind { BadMagic, Truncated, MaxvalTooLarge, Malformed };

    PgmError(Kind kind, std::size_t offset, const std::string& what);

    Kind kind() const { return kind_; }
    /// Byte offset into the file where parsing stopped.
    std::size_t offset() const { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// Parses binary (P5) or ASCII (P2) PGM with maxval at most 255.
PgmImage parse_pgm(std::span<const std::uint8_t> bytes);
PgmImage load_pgm(const std::filesystem::path& path);

/// Binary P5 encoding of `pixels` (values in [0, 1], rounded to 0..255).
std::vector<std::uint8_t> encode_pgm(Index width, Index height, const VectorXd& pixels);
void save_pgm(const std::filesystem::path& path, Index width, Index height, const VectorXd& pixels);

} // namespace rough_reduce
