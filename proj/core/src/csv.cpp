#include "ubq/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "ubq/error.hpp"

namespace ubq {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct CellWriter {
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return quote(s); }
};

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << quote(table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) fail(ErrorCode::LengthMismatch, "row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << std::visit(CellWriter{}, row[i]);
        }
        out << '\n';
    }
}

void write_csv_file(const std::string& path, const Table& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::InvalidConfig, "cannot open output file " + path);
    write_csv(out, table);
    out.flush();
    if (!out) fail(ErrorCode::InvalidConfig, "failed writing " + path);
}

}  // namespace ubq
