#include "table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace stoheat::cli {

namespace {

std::string csv_escape(const std::string& field) {
    const bool needs_quote = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& cell) {
    struct Visitor {
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(std::uint64_t x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return x; }
    };
    return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    struct Visitor {
        nlohmann::ordered_json operator()(double x) const { return x; }
        nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
        nlohmann::ordered_json operator()(std::uint64_t x) const { return x; }
        nlohmann::ordered_json operator()(bool x) const { return x; }
        nlohmann::ordered_json operator()(const std::string& x) const { return x; }
    };
    return std::visit(Visitor{}, cell);
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Table::Table(std::string schema_version, std::vector<std::string> columns)
    : schema_version_(std::move(schema_version)), columns_(std::move(columns)) {
    columns_.push_back("status");
    columns_.push_back("schema_version");
}

void Table::add_row(std::vector<Cell> cells, std::string status) {
    if (cells.size() + 2 != columns_.size())
        throw std::logic_error("Table::add_row: expected " +
                               std::to_string(columns_.size() - 2) + " cells, got " +
                               std::to_string(cells.size()));
    cells.emplace_back(std::move(status));
    cells.emplace_back(schema_version_);
    rows_.push_back(std::move(cells));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(columns_[c]);
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += csv_escape(cell_text(row[c]));
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = cell_json(row[c]);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string Table::render(const std::string& format) const {
    return format == "json" ? to_json() : to_csv();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << content;
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

} // namespace stoheat::cli
