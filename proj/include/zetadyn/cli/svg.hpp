#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace zetadyn::cli {

enum class PlotKind { Scatter, Line };

struct PlotData {
    std::vector<double> x;
    std::vector<double> y;
    std::string x_label;
    std::string y_label;
    std::string title;
};

/// A 1000x700 SVG document. Scatter plots get one <circle> per finite point,
/// line plots a single <polyline>. Non-finite points are left out; a
/// zero-width axis range is widened by 1 on each side.
[[nodiscard]] std::string render_svg_document(const PlotData& data, PlotKind kind);

/// Writes render_svg_document to `path` and returns its SHA-256.
std::string render_svg(const PlotData& data, PlotKind kind, const std::filesystem::path& path);

} // namespace zetadyn::cli
