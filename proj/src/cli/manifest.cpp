#include "zetadyn/cli/manifest.hpp"

#include "zetadyn/cli/csv.hpp"
#include "zetadyn/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <memory>

namespace zetadyn::cli {

std::string sha256_hex(std::string_view bytes)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

std::string input_hash(std::string_view command, const ConfigEntries& config)
{
    std::string text(command);
    text += '\n';
    for (const auto& [key, value] : config) {
        if (key == "workers" || key == "out" || key == "config") {
            continue;
        }
        text += key + "=" + value + "\n";
    }
    return sha256_hex(text);
}

std::string render_manifest(const RunManifest& m)
{
    std::string s;
    s += "version=" + m.version + "\n";
    s += "command=" + m.command + "\n";
    for (const auto& [key, value] : m.config) {
        s += "config." + key + "=" + value + "\n";
    }
    s += "input_hash=" + m.input_hash + "\n";
    for (const auto& [file, sum] : m.checksums) {
        s += "checksum." + file + "=" + sum + "\n";
    }
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.6f", m.wall_time_seconds);
    s += std::string("wall_time_seconds=") + wall + "\n";
    for (std::size_t i = 0; i < m.notes.size(); ++i) {
        s += "note." + std::to_string(i) + "=" + m.notes[i] + "\n";
    }
    return s;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path)
{
    write_file(path, render_manifest(manifest));
}

std::map<std::string, std::string> read_manifest(const std::filesystem::path& path)
{
    std::map<std::string, std::string> out;
    const auto doc = read_file(path);
    std::size_t start = 0;
    while (start < doc.size()) {
        auto end = doc.find('\n', start);
        if (end == std::string::npos) {
            end = doc.size();
        }
        const std::string line = doc.substr(start, end - start);
        start = end + 1;
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            out[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    return out;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& artifact)
{
    auto p = artifact;
    p.replace_extension(".manifest");
    return p;
}

} // namespace zetadyn::cli
