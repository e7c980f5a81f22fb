#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace stoheat::cli {

/// One output cell. Doubles are serialized with 17 significant digits so the
/// decimal form round-trips to the identical bit pattern.
using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

/// A rectangular result table with a fixed column schema. Two bookkeeping
/// columns are appended to every row automatically:
///   status          "ok", or a failure marker naming what went wrong
///                   (rows computed before a numerical failure are retained)
///   schema_version  fixed identifier of the column layout, e.g. "rate.v1"
class Table {
public:
    Table(std::string schema_version, std::vector<std::string> columns);

    /// cells.size() must equal the data column count.
    void add_row(std::vector<Cell> cells, std::string status = "ok");

    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }

    /// RFC-4180 style: comma separated, LF line endings, quoting only where
    /// required, one header row, uniform field counts.
    std::string to_csv() const;

    /// JSON array of row objects; keys follow the column order.
    std::string to_json() const;

    /// Dispatch on format ("csv" | "json").
    std::string render(const std::string& format) const;

private:
    std::string schema_version_;
    std::vector<std::string> columns_; // data columns + status + schema_version
    std::vector<std::vector<Cell>> rows_;
};

/// Format a double exactly as the CSV writer does (printf %.17g).
std::string format_double(double x);

/// Write `content` to `path`, or to stdout when path is "-". Throws
/// std::runtime_error if the file cannot be written.
void write_output(const std::string& path, const std::string& content);

/// "dir/name.csv" -> "dir/name_points.csv"; a path without an extension gets
/// the suffix appended. Used for the secondary table of rate/strong-error.
std::string sibling_path(const std::string& path, const std::string& suffix);

} // namespace stoheat::cli
