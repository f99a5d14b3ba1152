#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ubq {

using Cell = std::variant<double, std::int64_t, std::string>;

/// In-memory result table; one header row, one row per grid point.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Formats a double with 17 significant digits, which round-trips exactly.
std::string format_number(double x);

/// Writes UTF-8 CSV with LF line endings. Strings containing separators or
/// quotes are quoted.
void write_csv(std::ostream& out, const Table& table);
void write_csv_file(const std::string& path, const Table& table);

}  // namespace ubq
