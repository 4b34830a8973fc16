#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zetadyn::cli {

using Cell = std::variant<double, std::uint64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal string that parses back to the same binary64 value.
/// Non-finite values are written as nan, inf and -inf.
[[nodiscard]] std::string format_double(double value);

/// Inverse of format_double; throws InvalidInput on trailing garbage.
[[nodiscard]] double parse_double(std::string_view text);

/// Header line plus one line per row, comma separated, LF terminated.
[[nodiscard]] std::string to_csv(const Table& table);

/// Writes the table and returns the SHA-256 of the bytes written.
/// An empty table raises InvalidInput before the file is touched.
std::string write_csv(const Table& table, const std::filesystem::path& path);

struct CsvDocument {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

[[nodiscard]] CsvDocument parse_csv(std::string_view text);
[[nodiscard]] CsvDocument read_csv(const std::filesystem::path& path);

/// Writes bytes verbatim, throwing IoError with the path on failure.
void write_file(const std::filesystem::path& path, std::string_view bytes);
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

} // namespace zetadyn::cli
