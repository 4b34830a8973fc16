#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zetadyn::cli {

[[nodiscard]] std::string sha256_hex(std::string_view bytes);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

struct RunManifest {
    std::string version;
    std::string command;
    ConfigEntries config;
    std::string input_hash;
    std::vector<std::pair<std::string, std::string>> checksums; ///< file name -> SHA-256
    double wall_time_seconds = 0.0;
    std::vector<std::string> notes;
};

/// SHA-256 over "command\nkey=value\n..." of the entries that affect results.
/// Worker count and file locations are left out.
[[nodiscard]] std::string input_hash(std::string_view command, const ConfigEntries& config);

[[nodiscard]] std::string render_manifest(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

/// Flat key=value view of a manifest file.
[[nodiscard]] std::map<std::string, std::string> read_manifest(const std::filesystem::path& path);

/// `scan.csv` -> `scan.manifest`.
[[nodiscard]] std::filesystem::path manifest_path_for(const std::filesystem::path& artifact);

} // namespace zetadyn::cli
