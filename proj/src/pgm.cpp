#include "rough_reduce/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

namespace rough_reduce {

namespace {

const char* kind_name(PgmError::Kind kind) {
    switch (kind) {
    case PgmError::Kind::BadMagic: return "bad magic";
    case PgmError::Kind::Truncated: return "truncated";
    case PgmError::Kind::MaxvalTooLarge: return "maxval too large";
    case PgmError::Kind::Malformed: return "malformed";
    }
    return "error";
}

bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }
    bool at_end() const { return pos_ >= bytes_.size(); }

    // Whitespace and '#' comments running to the end of the line.
    void skip_separators() {
        while (!at_end()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (!at_end() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    long read_number(const char* what) {
        skip_separators();
        if (at_end())
            throw PgmError(PgmError::Kind::Truncated, pos_, std::string("missing ") + what);
        const auto start = pos_;
        long value = 0;
        while (!at_end() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000)
                throw PgmError(PgmError::Kind::Malformed, start, std::string(what) + " is too large");
            ++pos_;
        }
        if (pos_ == start || (!at_end() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#'))
            throw PgmError(PgmError::Kind::Malformed, pos_, std::string("invalid ") + what);
        return value;
    }

    std::uint8_t take() { return bytes_[pos_++]; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

PgmError::PgmError(Kind kind, std::size_t offset, const std::string& what)
    : Error(std::string("PGM ") + kind_name(kind) + " at byte " + std::to_string(offset) + ": " + what),
      kind_(kind), offset_(offset) {}

PgmImage parse_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2)
        throw PgmError(PgmError::Kind::BadMagic, 0, "file shorter than the magic number");
    if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        throw PgmError(PgmError::Kind::BadMagic, 0, "expected P5 or P2");
    const bool binary = bytes[1] == '5';

    Reader in(bytes.subspan(0));
    in.take();
    in.take();
    if (!in.at_end() && !is_space(bytes[2]) && bytes[2] != '#')
        throw PgmError(PgmError::Kind::BadMagic, 2, "magic number not followed by whitespace");

    const long width = in.read_number("width");
    const long height = in.read_number("height");
    const auto maxval_at = in.offset();
    const long maxval = in.read_number("maxval");
    if (width < 1 || height < 1)
        throw PgmError(PgmError::Kind::Malformed, maxval_at, "image has no pixels");
    if (maxval > 255)
        throw PgmError(PgmError::Kind::MaxvalTooLarge, maxval_at,
                       "maxval " + std::to_string(maxval) + " exceeds 255");
    if (maxval < 1) throw PgmError(PgmError::Kind::Malformed, maxval_at, "maxval must be positive");

    PgmImage img;
    img.width = width;
    img.height = height;
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.pixels.resize(static_cast<Index>(count));

    if (binary) {
        if (in.at_end())
            throw PgmError(PgmError::Kind::Truncated, in.offset(), "missing raster");
        in.take();  // single whitespace byte after maxval
        if (in.remaining() < count)
            throw PgmError(PgmError::Kind::Truncated, bytes.size(),
                           "raster needs " + std::to_string(count) + " bytes, found " +
                               std::to_string(in.remaining()));
        for (std::size_t i = 0; i < count; ++i) {
            const auto at = in.offset();
            const auto v = in.take();
            if (v > maxval)
                throw PgmError(PgmError::Kind::Malformed, at, "sample exceeds maxval");
            img.pixels(static_cast<Index>(i)) = static_cast<double>(v) / static_cast<double>(maxval);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            in.skip_separators();
            const auto at = in.offset();
            const long v = in.read_number("sample");
            if (v > maxval) throw PgmError(PgmError::Kind::Malformed, at, "sample exceeds maxval");
            img.pixels(static_cast<Index>(i)) = static_cast<double>(v) / static_cast<double>(maxval);
        }
    }
    return img;
}

PgmImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_pgm(bytes);
    } catch (const PgmError& e) {
        throw PgmError(e.kind(), e.offset(), path.string());
    }
}

std::vector<std::uint8_t> encode_pgm(Index width, Index height, const VectorXd& pixels) {
    if (width < 1 || height < 1 || pixels.size() != width * height)
        throw Error("encode_pgm: pixel count does not match dimensions");
    const std::string header =
        "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    for (Index i = 0; i < pixels.size(); ++i)
        out.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(pixels(i), 0.0, 1.0) * 255.0)));
    return out;
}

void save_pgm(const std::filesystem::path& path, Index width, Index height, const VectorXd& pixels) {
    const auto bytes = encode_pgm(width, height, pixels);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

} // namespace rough_reduce
