#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dqft/errors.hpp"

namespace dqft::detail {

// 17 significant digits, locale independent.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) noexcept {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline double parse_double(std::string_view field, std::size_t line) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw parse_error(line, "malformed number '" + std::string(field) + "'");
    if (!std::isfinite(v)) throw parse_error(line, "non-finite value '" + std::string(field) + "'");
    return v;
}

struct CsvRow {
    std::size_t line;  // 1-based
    std::vector<double> values;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

// Header row mandatory; blank lines are skipped; every row must have the
// header's field count.
inline CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const auto fields = split_commas(body);
        if (!have_header) {
            for (auto f : fields) table.header.emplace_back(f);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw parse_error(line_no, "expected " + std::to_string(table.header.size()) +
                                           " fields, found " + std::to_string(fields.size()));
        CsvRow row{line_no, {}};
        row.values.reserve(fields.size());
        for (auto f : fields) row.values.push_back(parse_double(f, line_no));
        table.rows.push_back(std::move(row));
    }
    if (in.bad()) throw io_error("read failure");
    if (!have_header) throw parse_error(0, "missing header row");
    return table;
}

inline std::string join_header(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out;
}

}  // namespace dqft::detail
