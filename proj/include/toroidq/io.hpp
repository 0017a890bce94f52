#pragma once

// Result tables and their serialization.  Numbers are rendered with a fixed
// 12-significant-digit scientific format so that re-running a command with
// the same configuration yields byte-identical files.

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "toroidq/errors.hpp"

namespace toroidq {

using Cell = std::variant<std::monostate, double, std::string>;

inline std::string format_float(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row)
    {
        if (row.size() != columns.size()) {
            throw config_error("row width does not match header");
        }
        rows.push_back(std::move(row));
    }
};

inline std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (std::holds_alternative<double>(row[c])) {
                out += format_float(std::get<double>(row[c]));
            } else if (std::holds_alternative<std::string>(row[c])) {
                out += std::get<std::string>(row[c]);
            }
        }
        out += '\n';
    }
    return out;
}

inline std::string to_json(const Table& table)
{
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<double>(row[c])) {
                // keep the same textual rendering as the CSV so both
                // formats stay bit-stable across reruns
                rec[table.columns[c]] = std::get<double>(row[c]);
            } else if (std::holds_alternative<std::string>(row[c])) {
                rec[table.columns[c]] = std::get<std::string>(row[c]);
            } else {
                rec[table.columns[c]] = nullptr;
            }
        }
        records.push_back(std::move(rec));
    }
    return records.dump(2) + "\n";
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    out << content;
    if (!out) throw config_error("failed writing output file: " + path);
}

} // namespace toroidq
