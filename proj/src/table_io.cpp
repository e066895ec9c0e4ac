#include "rough_reduce/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rough_reduce {

namespace {

class TableFormatError : public Error {
public:
    TableFormatError(std::size_t line, const std::string& what)
        : Error("decision table text, line " + std::to_string(line) + ": " + what) {}
};

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

int parse_code(std::string_view token, std::size_t line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v < 0)
        throw TableFormatError(line, "expected a non-negative integer code, got '" +
                                         std::string(token) + "'");
    return v;
}

struct RawTable {
    std::vector<std::string> names;
    std::vector<RuleId> universe;
    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::size_t> row_lines;
};

RawTable parse_raw(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = end + 1;
    }

    RawTable raw;
    std::size_t i = 0;
    while (i < lines.size() && split_ws(lines[i]).empty()) ++i;
    if (i == lines.size()) throw TableFormatError(1, "missing 'attrs:' header");

    auto header = split_ws(lines[i]);
    if (header.front() != "attrs:") throw TableFormatError(i + 1, "missing 'attrs:' header");
    std::size_t bar = 0;
    for (std::size_t k = 1; k < header.size(); ++k)
        if (header[k] == "|") {
            if (bar) throw TableFormatError(i + 1, "more than one '|' in header");
            bar = k;
        }
    if (!bar || bar + 2 != header.size())
        throw TableFormatError(i + 1, "header must end with '| <decision>'");
    for (std::size_t k = 1; k < header.size(); ++k)
        if (k != bar) raw.names.emplace_back(header[k]);
    ++i;

    if (i < lines.size()) {
        auto tokens = split_ws(lines[i]);
        if (!tokens.empty() && tokens.front() == "rules:") {
            for (std::size_t k = 1; k < tokens.size(); ++k)
                raw.universe.push_back(parse_code(tokens[k], i + 1));
            ++i;
        }
    }

    const auto width = raw.names.size();
    for (; i < lines.size(); ++i) {
        auto tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;
        if (tokens.size() != width)
            throw TableFormatError(i + 1, "expected " + std::to_string(width) + " codes, got " +
                                              std::to_string(tokens.size()));
        raw.rows.push_back(std::move(tokens));
        raw.row_lines.push_back(i + 1);
    }
    if (raw.rows.empty()) throw TableFormatError(lines.size(), "table has no rules");
    if (!raw.universe.empty() && raw.universe.size() != raw.rows.size())
        throw TableFormatError(2, "'rules:' lists " + std::to_string(raw.universe.size()) +
                                      " ids for " + std::to_string(raw.rows.size()) + " rules");
    return raw;
}

void write_header(std::ostringstream& out, std::span<const std::string> names) {
    out << "attrs:";
    for (std::size_t k = 0; k + 1 < names.size(); ++k) out << ' ' << names[k];
    out << " | " << names.back() << '\n';
}

template <typename Ids>
void write_universe(std::ostringstream& out, const Ids& ids) {
    bool natural = true;
    RuleId expect = 1;
    for (auto id : ids) natural = natural && id == expect++;
    if (natural) return;
    out << "rules:";
    for (auto id : ids) out << ' ' << id;
    out << '\n';
}

} // namespace

std::string format_table(const DecisionTable& table) {
    std::ostringstream out;
    write_header(out, table.names());
    write_universe(out, table.universe());
    for (std::size_t r = 0; r < table.rule_count(); ++r) {
        for (std::size_t a = 0; a < table.attribute_count(); ++a)
            out << table.value(r, static_cast<AttrId>(a)) << ' ';
        out << table.decision(r) << '\n';
    }
    return out.str();
}

DecisionTable parse_table(std::string_view text) {
    auto raw = parse_raw(text);
    const auto m = raw.names.size() - 1;
    std::vector<std::vector<Symbol>> conditions;
    std::vector<Symbol> decisions;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        std::vector<Symbol> row;
        for (std::size_t a = 0; a < m; ++a) row.push_back(parse_code(raw.rows[r][a], raw.row_lines[r]));
        conditions.push_back(std::move(row));
        decisions.push_back(parse_code(raw.rows[r][m], raw.row_lines[r]));
    }
    return DecisionTable(std::move(conditions), std::move(decisions), std::move(raw.universe),
                         std::move(raw.names));
}

std::string format_reduced(std::span<const std::string> names, std::span<const ReducedRule> rules) {
    if (names.empty()) throw Error("format_reduced: no attribute names");
    std::ostringstream out;
    write_header(out, names);
    std::vector<RuleId> ids;
    for (const auto& r : rules) ids.push_back(r.rule_id);
    write_universe(out, ids);
    for (const auto& r : rules) {
        if (r.cells.size() + 1 != names.size())
            throw Error("format_reduced: rule " + std::to_string(r.rule_id) + " has " +
                        std::to_string(r.cells.size()) + " cells for " +
                        std::to_string(names.size() - 1) + " condition attributes");
        for (const auto& cell : r.cells) {
            if (cell)
                out << *cell << ' ';
            else
                out << "x ";
        }
        out << r.decision << '\n';
    }
    return out.str();
}

ReducedTable parse_reduced(std::string_view text) {
    auto raw = parse_raw(text);
    const auto m = raw.names.size() - 1;
    ReducedTable out;
    out.names = raw.names;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        ReducedRule rule;
        rule.rule_id = raw.universe.empty() ? static_cast<RuleId>(r + 1) : raw.universe[r];
        for (std::size_t a = 0; a < m; ++a) {
            if (raw.rows[r][a] == "x")
                rule.cells.emplace_back();
            else
                rule.cells.emplace_back(parse_code(raw.rows[r][a], raw.row_lines[r]));
        }
        rule.decision = parse_code(raw.rows[r][m], raw.row_lines[r]);
        out.rules.push_back(std::move(rule));
    }
    return out;
}

DecisionTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str());
}

void write_table(const std::filesystem::path& path, const DecisionTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << format_table(table);
}

} // namespace rough_reduce
