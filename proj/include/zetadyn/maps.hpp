#pragma once

#include <optional>
#include <variant>

namespace zetadyn {

/// States closer to zero than this are rejected by every map.
inline constexpr double kSingularityGuard = 1e-12;
/// Orbits leaving |x| <= kEscapeCap are treated as escaped.
inline constexpr double kEscapeCap = 1e12;

/// Parameters (r, R, L, C) of the electrical recurrence.
struct ElectricalParams {
    double r = 0.7;
    double R = 0.000025;
    double L = 0.00045;
    double C = 0.73;

    /// r > 0, L > 0, C > 0, R >= 0, all finite.
    [[nodiscard]] bool valid() const noexcept;
    /// Throws InvalidInput naming the offending field.
    void validate() const;
};

/// Coefficient of the 1/x^3 term of the appendix map x/2 + 1/(4x) - alpha/x^3.
struct AppendixParams {
    double alpha = 0.0;

    [[nodiscard]] bool valid() const noexcept;
    void validate() const;
};

struct MapEval {
    double value;
    double derivative;
};

/// Either of the two maps, selected by the parameter type it carries.
using MapSpec = std::variant<ElectricalParams, AppendixParams>;

/// x_{n+1} = 1 - (sin(pi/x) / (r pi / x))^2 + R/L + 1/(C x), with d/dx.
/// Throws SingularState for |x| < kSingularityGuard, Overflow on non-finite output.
[[nodiscard]] MapEval eval_electrical_map(double x, const ElectricalParams& p);

/// x_{n+1} = x/2 + 1/(4x) - alpha/x^3, with d/dx = 1/2 - 1/(4x^2) + 3 alpha/x^4.
[[nodiscard]] MapEval eval_appendix_map(double x, const AppendixParams& p);

[[nodiscard]] MapEval eval_map(double x, const MapSpec& spec);

/// Validates whichever parameter set the spec holds.
void validate(const MapSpec& spec);

/// Returns a copy of the spec with its control parameter replaced
/// (r for the electrical map, alpha for the appendix map).
[[nodiscard]] MapSpec with_control(const MapSpec& spec, double value);
[[nodiscard]] double control_of(const MapSpec& spec) noexcept;

/// sin(pi u) / (pi u), equal to 1 at u = 0.
[[nodiscard]] double sinc_pi(double u) noexcept;

/// g(u) = 1 - sinc_pi(u)^2 + delta. Without delta the deviation term is zero.
[[nodiscard]] double pair_correlation_g(double u, std::optional<double> delta_term = std::nullopt) noexcept;

/// R2(d) = (2/pi) (d sin(pi d / 2) + sin^2(pi d / 2) / 2).
[[nodiscard]] double pair_correlation_R2(double delta) noexcept;

} // namespace zetadyn
