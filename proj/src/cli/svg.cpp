#include "zetadyn/cli/svg.hpp"

#include "zetadyn/cli/csv.hpp"
#include "zetadyn/cli/manifest.hpp"
#include "zetadyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zetadyn::cli {

namespace {

constexpr double kWidth = 1000.0;
constexpr double kHeight = 700.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void widen_if_degenerate()
    {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

std::string escape(const std::string& s)
{
    std::string out;
    for (const char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string num(double v)
{
    // two decimals are plenty for pixel coordinates
    return format_double(std::round(v * 100.0) / 100.0);
}

} // namespace

std::string render_svg_document(const PlotData& data, PlotKind kind)
{
    if (data.x.size() != data.y.size()) {
        throw InvalidInput("plot needs matching x and y lengths");
    }
    std::vector<std::pair<double, double>> pts;
    Range rx;
    Range ry;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
        if (std::isfinite(data.x[i]) && std::isfinite(data.y[i])) {
            pts.emplace_back(data.x[i], data.y[i]);
            rx.lo = std::min(rx.lo, data.x[i]);
            rx.hi = std::max(rx.hi, data.x[i]);
            ry.lo = std::min(ry.lo, data.y[i]);
            ry.hi = std::max(ry.hi, data.y[i]);
        }
    }
    if (pts.empty()) {
        throw InvalidInput("plot needs at least one finite point");
    }
    rx.widen_if_degenerate();
    ry.widen_if_degenerate();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto sy = [&](double y) { return kTop + (ry.hi - y) / (ry.hi - ry.lo) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 700\" width=\"1000\" height=\"700\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"700\" fill=\"white\"/>\n";
    s += "<text x=\"500\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" + escape(data.title) + "</text>\n";

    const std::string x0 = num(kLeft);
    const std::string x1 = num(kLeft + pw);
    const std::string y0 = num(kTop + ph);
    const std::string y1 = num(kTop);
    s += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x1 + "\" y2=\"" + y0 + "\"/>\n";
    s += "<line x1=\"" + x0 + "\" y1=\"" + y0 + "\" x2=\"" + x0 + "\" y2=\"" + y1 + "\"/>\n";
    s += "</g>\n";
    s += "<g class=\"ticks\" font-size=\"12\">\n";
    s += "<text x=\"" + x0 + "\" y=\"" + num(kTop + ph + 20) + "\" text-anchor=\"start\">" + format_double(rx.lo) + "</text>\n";
    s += "<text x=\"" + x1 + "\" y=\"" + num(kTop + ph + 20) + "\" text-anchor=\"end\">" + format_double(rx.hi) + "</text>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + y0 + "\" text-anchor=\"end\">" + format_double(ry.lo) + "</text>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(kTop + 12) + "\" text-anchor=\"end\">" + format_double(ry.hi) + "</text>\n";
    s += "</g>\n";
    s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 20) + "\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(data.x_label) + "</text>\n";
    s += "<text x=\"20\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 " +
         num(kTop + ph / 2) + ")\">" + escape(data.y_label) + "</text>\n";

    if (kind == PlotKind::Scatter) {
        s += "<g class=\"marks\" fill=\"steelblue\">\n";
        for (const auto& [x, y] : pts) {
            s += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"2\"/>\n";
        }
        s += "</g>\n";
    } else {
        s += "<polyline class=\"marks\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            s += (i ? " " : "") + num(sx(pts[i].first)) + "," + num(sy(pts[i].second));
        }
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string render_svg(const PlotData& data, PlotKind kind, const std::filesystem::path& path)
{
    const std::string doc = render_svg_document(data, kind);
    write_file(path, doc);
    return sha256_hex(doc);
}

} // namespace zetadyn::cli
