#include "zetadyn/dynamics.hpp"

#include "zetadyn/errors.hpp"
#include "zetadyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace zetadyn {

namespace {

constexpr int kNewtonIterations = 100;
constexpr double kNewtonStep = 1e-13;
constexpr double kFlatSlope = 1e-14;
constexpr double kDegenerateDerivative = 1e-300;

double fixed_point_equation(const MapSpec& spec, double x) { return eval_map(x, spec).value - x; }

/// Newton on g(x) = f(x) - x. Returns nullopt if the iteration leaves the map's
/// domain or fails to settle within the iteration cap.
std::optional<double> newton_fixed_point(const MapSpec& spec, double seed)
{
    double x = seed;
    for (int it = 0; it < kNewtonIterations; ++it) {
        double g = 0.0;
        double slope = 0.0;
        try {
            const MapEval e = eval_map(x, spec);
            g = e.value - x;
            slope = e.derivative - 1.0;
            if (std::fabs(slope) < kFlatSlope) {
                const double h = std::max(1e-7, 1e-7 * std::fabs(x));
                slope = (fixed_point_equation(spec, x + h) - fixed_point_equation(spec, x - h)) / (2.0 * h);
            }
        } catch (const Error&) {
            return std::nullopt;
        }
        if (std::fabs(slope) < kFlatSlope || !std::isfinite(slope)) {
            return std::nullopt;
        }
        const double step = g / slope;
        x -= step;
        if (!std::isfinite(x)) {
            return std::nullopt;
        }
        if (std::fabs(step) <= kNewtonStep * std::max(1.0, std::fabs(x))) {
            return x;
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view status_name(const OrbitStatus& status) noexcept
{
    switch (status.index()) {
    case 0:
        return "completed";
    case 1:
        return "escaped";
    default:
        return "singular";
    }
}

std::string_view stability_name(Stability s) noexcept
{
    switch (s) {
    case Stability::Attracting:
        return "attracting";
    case Stability::Repelling:
        return "repelling";
    case Stability::Neutral:
        break;
    }
    return "neutral";
}

Stability classify_multiplier(double multiplier) noexcept
{
    const double m = std::fabs(multiplier);
    if (m < 1.0 - kNeutralBand) {
        return Stability::Attracting;
    }
    if (m > 1.0 + kNeutralBand) {
        return Stability::Repelling;
    }
    return Stability::Neutral;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps)
{
    if (steps < 2) {
        throw InvalidInput("grid needs at least 2 steps");
    }
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        throw InvalidInput("grid range must satisfy lo < hi");
    }
    std::vector<double> grid(steps);
    const double width = hi - lo;
    const auto last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        grid[i] = lo + width * (static_cast<double>(i) / last);
    }
    grid.back() = hi;
    return grid;
}

Orbit generate_orbit(const MapSpec& spec, double x0, std::size_t n, std::size_t transient)
{
    validate(spec);
    if (n <= transient) {
        throw InvalidInput("iteration count n must exceed transient");
    }
    if (!(std::fabs(x0) >= kSingularityGuard) || !std::isfinite(x0)) {
        throw InvalidInput("x0 must be finite and satisfy the singularity guard |x0| >= 1e-12");
    }

    Orbit orbit;
    orbit.params = spec;
    orbit.x0 = x0;
    orbit.n = n;
    orbit.transient = transient;
    orbit.samples.reserve(n - transient);

    double x = x0;
    for (std::size_t step = 1; step <= n; ++step) {
        double next = 0.0;
        try {
            next = eval_map(x, spec).value;
        } catch (const SingularState&) {
            orbit.status = orbit_status::Singular{step};
            return orbit;
        } catch (const Overflow&) {
            orbit.status = orbit_status::Escaped{step, std::numeric_limits<double>::infinity()};
            return orbit;
        }
        if (!std::isfinite(next) || std::fabs(next) > kEscapeCap) {
            orbit.status = orbit_status::Escaped{step, next};
            return orbit;
        }
        x = next;
        if (step > transient) {
            orbit.samples.push_back(x);
        }
    }
    return orbit;
}

std::vector<FixedPointRecord> find_fixed_points(const MapSpec& spec, std::pair<double, double> interval,
                                                std::size_t n_seeds)
{
    validate(spec);
    const auto [lo, hi] = interval;
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        throw InvalidInput("search interval must satisfy lo < hi");
    }
    if (lo < kSingularityGuard && hi > -kSingularityGuard) {
        throw InvalidInput("search interval must exclude the singularity guard around 0");
    }
    if (n_seeds == 0) {
        throw InvalidInput("n_seeds must be >= 1");
    }

    std::vector<FixedPointRecord> found;
    for (std::size_t i = 0; i < n_seeds; ++i) {
        const double seed = n_seeds == 1 ? 0.5 * (lo + hi)
                                         : lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(n_seeds - 1));
        const auto root = newton_fixed_point(spec, seed);
        if (!root || *root < lo || *root > hi) {
            continue;
        }
        MapEval e{};
        try {
            e = eval_map(*root, spec);
        } catch (const Error&) {
            continue;
        }
        const double residual = std::fabs(e.value - *root);
        if (!(residual < kFixedPointResidual)) {
            continue;
        }
        found.push_back({control_of(spec), *root, e.derivative, classify_multiplier(e.derivative), residual});
    }

    std::sort(found.begin(), found.end(),
              [](const FixedPointRecord& a, const FixedPointRecord& b) { return a.x_star < b.x_star; });

    std::vector<FixedPointRecord> merged;
    for (const auto& rec : found) {
        if (!merged.empty() && std::fabs(rec.x_star - merged.back().x_star) < kRootMergeDistance) {
            if (rec.residual < merged.back().residual) {
                merged.back() = rec;
            }
            continue;
        }
        merged.push_back(rec);
    }
    return merged;
}

double lyapunov_exponent(const Orbit& orbit)
{
    if (!orbit.completed()) {
        throw OrbitAborted("orbit terminated early (" + std::string(status_name(orbit.status)) + ")");
    }
    if (orbit.samples.empty()) {
        throw TooShort("orbit has no retained samples");
    }
    double sum = 0.0;
    for (const double x : orbit.samples) {
        double slope = 0.0;
        try {
            slope = eval_map(x, orbit.params).derivative;
        } catch (const Error& e) {
            throw OrbitAborted(std::string("derivative undefined along the orbit: ") + e.what());
        }
        const double magnitude = std::fabs(slope);
        if (magnitude < kDegenerateDerivative) {
            throw DegenerateDerivative("|f'(x)| vanishes along the orbit");
        }
        sum += std::log(magnitude);
    }
    return sum / static_cast<double>(orbit.samples.size());
}

double lyapunov_exponent(const MapSpec& spec, double x0, std::size_t n, std::size_t transient)
{
    return lyapunov_exponent(generate_orbit(spec, x0, n, transient));
}

ScanResult parameter_scan(const MapSpec& base, const ScanSettings& settings)
{
    validate(base);
    if (settings.n <= settings.transient) {
        throw InvalidInput("iteration count n must exceed transient");
    }
    if (settings.retain > settings.n - settings.transient) {
        throw InvalidInput("retain must not exceed n - transient");
    }
    if (!(std::fabs(settings.x0) >= kSingularityGuard)) {
        throw InvalidInput("x0 must satisfy the singularity guard |x0| >= 1e-12");
    }
    const auto grid = linear_grid(settings.range.first, settings.range.second, settings.steps);
    for (const double value : grid) {
        validate(with_control(base, value));
    }

    struct Entry {
        std::vector<double> retained;
        double lyapunov;
        OrbitStatus status;
    };

    auto entries = parallel_indexed(grid.size(), settings.workers, [&](std::size_t i) {
        const Orbit orbit = generate_orbit(with_control(base, grid[i]), settings.x0, settings.n, settings.transient);
        Entry entry{{}, std::numeric_limits<double>::quiet_NaN(), orbit.status};
        if (!orbit.completed()) {
            return entry;
        }
        entry.retained.assign(orbit.samples.end() - static_cast<std::ptrdiff_t>(settings.retain), orbit.samples.end());
        try {
            entry.lyapunov = lyapunov_exponent(orbit);
        } catch (const Error&) {
            // degenerate derivative: exponent stays NaN, the orbit itself is fine
        }
        return entry;
    });

    ScanResult result;
    result.parameter_grid = grid;
    for (auto& e : entries) {
        result.retained_points.push_back(std::move(e.retained));
        result.lyapunov.push_back(e.lyapunov);
        result.status.push_back(e.status);
    }
    return result;
}

std::vector<ConsistencyNote> compare_with_fixed_points(const MapSpec& base, const ScanResult& scan,
                                                       std::pair<double, double> interval, std::size_t n_seeds)
{
    std::vector<ConsistencyNote> notes;
    for (std::size_t i = 0; i < scan.parameter_grid.size(); ++i) {
        const double control = scan.parameter_grid[i];
        const MapSpec spec = with_control(base, control);
        const auto fixed = find_fixed_points(spec, interval, n_seeds);
        std::ostringstream msg;
        msg.precision(6);
        bool flagged = false;
        auto sep = [&] {
            if (flagged) {
                msg << "; ";
            }
            flagged = true;
        };

        for (const auto& fp : fixed) {
            if (fp.stability != Stability::Attracting) {
                sep();
                msg << "fixed point x*=" << fp.x_star << " is " << stability_name(fp.stability)
                    << " (multiplier " << fp.multiplier << ")";
            }
        }
        if (!std::holds_alternative<orbit_status::Completed>(scan.status[i])) {
            sep();
            msg << "orbit " << status_name(scan.status[i]);
        } else {
            const double lambda = scan.lyapunov[i];
            if (lambda > 0.0) {
                sep();
                msg << "lyapunov " << lambda << " > 0 (chaotic orbit)";
            }
            const auto& pts = scan.retained_points[i];
            const bool at_fixed_point =
                !pts.empty() && std::any_of(fixed.begin(), fixed.end(), [&](const FixedPointRecord& fp) {
                    return std::fabs(pts.back() - fp.x_star) < 5e-4;
                });
            if (!at_fixed_point) {
                sep();
                msg << "orbit settles away from every fixed point in [" << interval.first << ", " << interval.second
                    << "]";
            }
        }
        if (flagged) {
            notes.push_back({control, msg.str()});
        }
    }
    return notes;
}

} // namespace zetadyn
