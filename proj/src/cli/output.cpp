#include "qwalk/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace qwalk::cli {

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::logic_error("Table::add_row: row width does not match the header");
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const
{
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k] == name)
            return k;
    throw std::out_of_range("no column " + name);
}

std::string format_real(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        return "0";  // no "-0"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

namespace {

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

nlohmann::ordered_json json_cell(const Cell& cell)
{
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(double v) const
        {
            if (!std::isfinite(v))
                return nullptr;
            const std::string text = format_real(v);
            double rounded = v;
            std::from_chars(text.data(), text.data() + text.size(), rounded);
            return rounded;
        }
        nlohmann::ordered_json operator()(bool v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table)
{
    for (const auto& [k, v] : table.meta)
        os << "# " << k << '=' << v << '\n';
    for (std::size_t k = 0; k < table.columns.size(); ++k)
        os << (k ? "," : "") << table.columns[k];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k)
            os << (k ? "," : "") << csv_quote(format_cell(row[k]));
        os << '\n';
    }
    for (const auto& [k, v] : table.summary)
        os << "# " << k << '=' << v << '\n';
}

std::string to_json(const Table& table)
{
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.meta)
        doc["meta"][k] = v;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size(); ++k)
            obj[table.columns[k]] = json_cell(row[k]);
        doc["rows"].push_back(std::move(obj));
    }
    doc["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.summary)
        doc["summary"][k] = v;
    return doc.dump(2) + "\n";
}

}  // namespace qwalk::cli
