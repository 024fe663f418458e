#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qwalk::cli {

/// Empty, integer, real, boolean or text cell.
using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

/// Tabular command output: "# key=value" preamble, one header line, rows,
/// and trailing "# key=value" summary lines.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> summary;

    void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
    void add_summary(std::string key, std::string value) { summary.emplace_back(std::move(key), std::move(value)); }
    /// Throws std::logic_error when the row width differs from columns.
    void add_row(std::vector<Cell> row);
    /// Index of a column; throws std::out_of_range.
    std::size_t column(const std::string& name) const;
};

/// 15 significant digits, '.' separator, locale independent; "nan", "inf".
std::string format_real(double v);
std::string format_cell(const Cell& cell);

void write_csv(std::ostream& os, const Table& table);
/// {"meta": {...}, "columns": [...], "rows": [{...}], "summary": {...}}
/// with reals rounded to the same 15 digits; non-finite reals become null.
std::string to_json(const Table& table);

}  // namespace qwalk::cli
