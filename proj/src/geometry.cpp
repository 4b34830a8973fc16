#include "zetadyn/geometry.hpp"

#include "zetadyn/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zetadyn {

namespace {

void require_completed(const Orbit& orbit)
{
    if (!orbit.completed()) {
        throw InvalidInput("orbit did not complete (" + std::string(status_name(orbit.status)) + ")");
    }
    if (orbit.samples.size() < 2) {
        throw TooShort("delay pairs need at least 2 samples");
    }
}

} // namespace

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw TooShort("median of an empty sample set");
    }
    const auto mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::vector<DelayPair> phase_portrait(const Orbit& orbit)
{
    require_completed(orbit);
    std::vector<DelayPair> pairs;
    pairs.reserve(orbit.samples.size() - 1);
    for (std::size_t i = 0; i + 1 < orbit.samples.size(); ++i) {
        pairs.push_back({orbit.samples[i], orbit.samples[i + 1]});
    }
    return pairs;
}

SectionPoints poincare_section(const Orbit& orbit, std::optional<double> section_value, SectionMode mode)
{
    require_completed(orbit);
    const double s = section_value.value_or(median(orbit.samples));
    SectionPoints out{s, {}, mode};
    const auto pairs = phase_portrait(orbit);

    if (const auto* strobe = std::get_if<section_mode::Stroboscopic>(&mode)) {
        if (strobe->k == 0) {
            throw InvalidInput("stroboscopic stride must be >= 1");
        }
        for (std::size_t i = 0; i < pairs.size(); i += strobe->k) {
            out.points.push_back(pairs[i]);
        }
        return out;
    }

    for (const auto& p : pairs) {
        if ((p.current - s) * (p.next - s) <= 0.0) {
            out.points.push_back(p);
        }
    }
    return out;
}

EmbeddedOrbit attractor_embedding(const Orbit& orbit)
{
    if (std::holds_alternative<orbit_status::Singular>(orbit.status)) {
        throw InvalidInput("embedding needs a completed or escaped orbit");
    }
    if (orbit.samples.empty()) {
        throw TooShort("embedding needs at least one sample");
    }
    EmbeddedOrbit out;
    out.points.reserve(orbit.samples.size());
    for (const double x : orbit.samples) {
        out.points.push_back({x, std::sin(x), std::cos(x)});
    }
    return out;
}

} // namespace zetadyn
