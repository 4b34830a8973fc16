#include "zetadyn/energy.hpp"

#include "zetadyn/errors.hpp"
#include "zetadyn/parallel.hpp"

#include <cmath>
#include <limits>

namespace zetadyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ordered_mean(std::span<const double> values)
{
    return ordered_sum(values) / static_cast<double>(values.size());
}

void check_settings(const ScanSettings& s)
{
    if (s.n <= s.transient) {
        throw InvalidInput("iteration count n must exceed transient");
    }
    if (s.n - s.transient < 2) {
        throw InvalidInput("energy averages need at least 2 retained samples");
    }
    if (!(std::fabs(s.x0) >= kSingularityGuard)) {
        throw InvalidInput("x0 must satisfy the singularity guard |x0| >= 1e-12");
    }
}

std::vector<double> r_grid(const ElectricalParams& base, const ScanSettings& s)
{
    auto grid = linear_grid(s.range.first, s.range.second, s.steps);
    for (const double r : grid) {
        ElectricalParams p = base;
        p.r = r;
        p.validate();
    }
    return grid;
}

EnergyPoint energy_point(double control, const ElectricalParams& p, const ScanSettings& s)
{
    const Orbit orbit = generate_orbit(p, s.x0, s.n, s.transient);
    if (!orbit.completed()) {
        return {control, orbit.status, kNaN, kNaN};
    }
    const auto series = energy_series(orbit, p);
    return {control, orbit.status, ordered_mean(series.e_inductor), ordered_mean(series.e_capacitor)};
}

} // namespace

double ordered_sum(std::span<const double> values) noexcept
{
    double total = 0.0;
    for (const double v : values) {
        total += v;
    }
    return total;
}

EnergySeries energy_series(const Orbit& orbit, const ElectricalParams& p)
{
    p.validate();
    const auto& xs = orbit.samples;
    if (xs.size() < 2) {
        throw TooShort("energy series needs at least 2 samples");
    }
    EnergySeries out;
    out.e_inductor.reserve(xs.size());
    out.e_capacitor.reserve(xs.size());
    for (const double x : xs) {
        out.e_inductor.push_back(0.5 * p.L * x * x);
        out.e_capacitor.push_back(0.5 * x * x / p.C);
    }
    out.transfer_rate.reserve(xs.size() - 1);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        out.transfer_rate.push_back(out.e_inductor[k + 1] - out.e_inductor[k]);
    }
    return out;
}

std::vector<EnergyPoint> energy_vs_r(const ElectricalParams& base, const ScanSettings& settings)
{
    base.validate();
    check_settings(settings);
    const auto grid = r_grid(base, settings);
    return parallel_indexed(grid.size(), settings.workers, [&](std::size_t i) {
        ElectricalParams p = base;
        p.r = grid[i];
        return energy_point(grid[i], p, settings);
    });
}

std::vector<EnergyPoint> energy_vs_capacitance(const ElectricalParams& base, std::span<const double> capacitances,
                                               const ScanSettings& settings)
{
    base.validate();
    check_settings(settings);
    for (const double c : capacitances) {
        ElectricalParams p = base;
        p.C = c;
        p.validate();
    }
    return parallel_indexed(capacitances.size(), settings.workers, [&](std::size_t i) {
        ElectricalParams p = base;
        p.C = capacitances[i];
        return energy_point(capacitances[i], p, settings);
    });
}

std::vector<TransferPoint> transfer_rate_vs_r(const ElectricalParams& base, const ScanSettings& settings)
{
    base.validate();
    check_settings(settings);
    const auto grid = r_grid(base, settings);
    return parallel_indexed(grid.size(), settings.workers, [&](std::size_t i) -> TransferPoint {
        ElectricalParams p = base;
        p.r = grid[i];
        const Orbit orbit = generate_orbit(p, settings.x0, settings.n, settings.transient);
        if (!orbit.completed()) {
            return {grid[i], orbit.status, kNaN};
        }
        const auto series = energy_series(orbit, p);
        return {grid[i], orbit.status, ordered_mean(series.transfer_rate)};
    });
}

} // namespace zetadyn
