#pragma once

#include "zetadyn/dynamics.hpp"

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace zetadyn {

/// (x_n, x_{n+1}) delay pair.
struct DelayPair {
    double current;
    double next;
    bool operator==(const DelayPair&) const = default;
};

struct EmbeddedPoint {
    double x;
    double y; ///< sin(x)
    double z; ///< cos(x)
};

struct EmbeddedOrbit {
    std::vector<EmbeddedPoint> points;
};

namespace section_mode {
/// Pairs that straddle the threshold: (x_n - s)(x_{n+1} - s) <= 0.
struct Crossing {};
/// Every k-th delay pair, starting with the first.
struct Stroboscopic {
    std::size_t k = 1;
};
} // namespace section_mode

using SectionMode = std::variant<section_mode::Crossing, section_mode::Stroboscopic>;

struct SectionPoints {
    double section_value;
    std::vector<DelayPair> points;
    SectionMode mode;
};

/// Consecutive delay pairs of a completed orbit. Throws TooShort below 2 samples.
[[nodiscard]] std::vector<DelayPair> phase_portrait(const Orbit& orbit);

/// Poincare-style section of a 1-D orbit in delay coordinates. The threshold
/// defaults to the median of the retained samples.
[[nodiscard]] SectionPoints poincare_section(const Orbit& orbit, std::optional<double> section_value, SectionMode mode);

/// Point-wise (x, sin x, cos x). Accepts completed orbits and escaped ones with samples.
[[nodiscard]] EmbeddedOrbit attractor_embedding(const Orbit& orbit);

[[nodiscard]] double median(std::vector<double> values);

} // namespace zetadyn
