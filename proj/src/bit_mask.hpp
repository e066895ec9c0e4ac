#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rough_reduce::detail {

// Fixed-width dynamic bitset used for row sets and attribute sets.
class BitMask {
public:
    BitMask() = default;
    explicit BitMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    static BitMask all(std::size_t bits) {
        BitMask m(bits);
        for (std::size_t i = 0; i < bits; ++i) m.set(i);
        return m;
    }

    std::size_t bits() const { return bits_; }

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool none() const {
        return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
    }

    bool intersects(const BitMask& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const BitMask& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    BitMask& operator&=(const BitMask& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    BitMask& operator|=(const BitMask& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend BitMask operator&(BitMask a, const BitMask& b) { return a &= b; }
    friend BitMask operator|(BitMask a, const BitMask& b) { return a |= b; }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto word = words_[w];
            while (word) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(word));
                f(w * 64 + bit);
                word &= word - 1;
            }
        }
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    bool operator==(const BitMask&) const = default;
    bool operator<(const BitMask& o) const { return words_ < o.words_; }

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Minimal transversals (minimal hitting sets) of `family` by Berge's
// incremental algorithm. Every member of `family` must be non-empty.
std::vector<BitMask> minimal_transversals(std::vector<BitMask> family, std::size_t bits);

} // namespace rough_reduce::detail
