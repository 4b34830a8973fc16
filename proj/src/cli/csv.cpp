#include "zetadyn/cli/csv.hpp"

#include "zetadyn/cli/manifest.hpp"
#include "zetadyn/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace zetadyn::cli {

std::string format_double(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text)
{
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    }
    return value;
}

namespace {

struct CellWriter {
    std::string& out;
    void operator()(double v) const { out += format_double(v); }
    void operator()(std::uint64_t v) const { out += std::to_string(v); }
    void operator()(const std::string& v) const { out += v; }
};

std::vector<std::string> split_line(std::string_view line)
{
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            return cells;
        }
        start = comma + 1;
    }
}

} // namespace

std::string to_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out += i ? "," : "";
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            std::visit(CellWriter{out}, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string write_csv(const Table& table, const std::filesystem::path& path)
{
    if (table.rows.empty()) {
        throw InvalidInput("refusing to write an empty table to " + path.string());
    }
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw InvalidInput("row width does not match the header for " + path.string());
        }
    }
    const std::string bytes = to_csv(table);
    write_file(path, bytes);
    return sha256_hex(bytes);
}

CsvDocument parse_csv(std::string_view text)
{
    CsvDocument doc;
    bool first = true;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto line = text.substr(start, end - start);
        start = end + 1;
        if (first) {
            doc.header = split_line(line);
            first = false;
        } else {
            doc.rows.push_back(split_line(line));
        }
    }
    return doc;
}

CsvDocument read_csv(const std::filesystem::path& path)
{
    return parse_csv(read_file(path));
}

void write_file(const std::filesystem::path& path, std::string_view bytes)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) {
        throw IoError("write failed for " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace zetadyn::cli
