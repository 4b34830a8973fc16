#include "zetadyn/maps.hpp"

#include "zetadyn/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zetadyn {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what)
{
    if (!ok) {
        throw InvalidInput(what);
    }
}

void guard(double x)
{
    if (!(std::fabs(x) >= kSingularityGuard)) {
        throw SingularState(x);
    }
}

MapEval checked(MapEval e)
{
    if (!std::isfinite(e.value) || !std::isfinite(e.derivative)) {
        throw Overflow("map evaluation is not finite");
    }
    return e;
}

} // namespace

bool ElectricalParams::valid() const noexcept
{
    return std::isfinite(r) && std::isfinite(R) && std::isfinite(L) && std::isfinite(C) && r > 0.0 &&
           R >= 0.0 && L > 0.0 && C > 0.0;
}

void ElectricalParams::validate() const
{
    require(std::isfinite(r) && r > 0.0, "r must be finite and > 0");
    require(std::isfinite(R) && R >= 0.0, "R must be finite and >= 0");
    require(std::isfinite(L) && L > 0.0, "L must be finite and > 0");
    require(std::isfinite(C) && C > 0.0, "C must be finite and > 0");
}

bool AppendixParams::valid() const noexcept { return std::isfinite(alpha); }

void AppendixParams::validate() const { require(valid(), "alpha must be finite"); }

MapEval eval_electrical_map(double x, const ElectricalParams& p)
{
    guard(x);
    const double u = kPi / x;
    const double s = std::sin(u);
    const double c = std::cos(u);
    // sin(pi/x) / (r pi / x) == x sin(pi/x) / (r pi)
    const double q = x * s / (p.r * kPi);
    const double dq = (s - u * c) / (p.r * kPi);
    const double value = 1.0 - q * q + p.R / p.L + 1.0 / (p.C * x);
    const double derivative = -2.0 * q * dq - 1.0 / (p.C * x * x);
    return checked({value, derivative});
}

MapEval eval_appendix_map(double x, const AppendixParams& p)
{
    guard(x);
    const double x2 = x * x;
    const double value = 0.5 * x + 1.0 / (4.0 * x) - p.alpha / (x2 * x);
    const double derivative = 0.5 - 1.0 / (4.0 * x2) + 3.0 * p.alpha / (x2 * x2);
    return checked({value, derivative});
}

MapEval eval_map(double x, const MapSpec& spec)
{
    return std::visit(
        [x](const auto& p) -> MapEval {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ElectricalParams>) {
                return eval_electrical_map(x, p);
            } else {
                return eval_appendix_map(x, p);
            }
        },
        spec);
}

void validate(const MapSpec& spec)
{
    std::visit([](const auto& p) { p.validate(); }, spec);
}

MapSpec with_control(const MapSpec& spec, double value)
{
    MapSpec out = spec;
    if (auto* e = std::get_if<ElectricalParams>(&out)) {
        e->r = value;
    } else {
        std::get<AppendixParams>(out).alpha = value;
    }
    return out;
}

double control_of(const MapSpec& spec) noexcept
{
    if (const auto* e = std::get_if<ElectricalParams>(&spec)) {
        return e->r;
    }
    return std::get<AppendixParams>(spec).alpha;
}

double sinc_pi(double u) noexcept
{
    const double t = kPi * u;
    if (std::fabs(t) < 1e-4) {
        // 1 - t^2/6 + t^4/120, truncation below 1e-18 here
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    return std::sin(t) / t;
}

double pair_correlation_g(double u, std::optional<double> delta_term) noexcept
{
    const double s = sinc_pi(u);
    return 1.0 - s * s + delta_term.value_or(0.0);
}

double pair_correlation_R2(double delta) noexcept
{
    const double s = std::sin(kPi * delta / 2.0);
    return (2.0 / kPi) * (delta * s + s * s / 2.0);
}

} // namespace zetadyn
