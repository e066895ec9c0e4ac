#pragma once

#include "rough_reduce/rough_core.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rough_reduce {

// Plain-text decision tables:
//
//   attrs: a b c | d
//   rules: 3 5 9          (only when the universe is not 1..n)
//   1 0 1 1
//   ...
//
// Each rule line holds the condition codes followed by the decision code.
// Reduced rules use the same layout with `x` for a don't-care cell.

std::string format_table(const DecisionTable& table);
DecisionTable parse_table(std::string_view text);

std::string format_reduced(std::span<const std::string> names, std::span<const ReducedRule> rules);

struct ReducedTable {
    std::vector<std::string> names;
    std::vector<ReducedRule> rules;
};
ReducedTable parse_reduced(std::string_view text);

DecisionTable read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const DecisionTable& table);

} // namespace rough_reduce
