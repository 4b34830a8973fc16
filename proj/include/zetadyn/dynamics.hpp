#pragma once

#include "zetadyn/maps.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace zetadyn {

namespace orbit_status {
struct Completed {
    bool operator==(const Completed&) const = default;
};
/// |x| exceeded kEscapeCap (or became non-finite) while computing iterate `step`.
struct Escaped {
    std::size_t step;
    double last_value;
    bool operator==(const Escaped&) const = default;
};
/// Iterate `step - 1` fell inside the singularity guard, so iterate `step` is undefined.
struct Singular {
    std::size_t step;
    bool operator==(const Singular&) const = default;
};
} // namespace orbit_status

using OrbitStatus = std::variant<orbit_status::Completed, orbit_status::Escaped, orbit_status::Singular>;

[[nodiscard]] std::string_view status_name(const OrbitStatus& status) noexcept;

struct Orbit {
    MapSpec params;
    double x0 = 0.0;
    std::size_t n = 0;
    std::size_t transient = 0;
    /// Iterates transient+1 ... n, in order (fewer if the orbit terminated early).
    std::vector<double> samples;
    OrbitStatus status = orbit_status::Completed{};

    [[nodiscard]] bool completed() const noexcept
    {
        return std::holds_alternative<orbit_status::Completed>(status);
    }
};

enum class Stability { Attracting, Repelling, Neutral };

[[nodiscard]] std::string_view stability_name(Stability s) noexcept;

inline constexpr double kNeutralBand = 1e-9;
inline constexpr double kFixedPointResidual = 1e-10;
inline constexpr double kRootMergeDistance = 1e-8;

/// Attracting iff |m| < 1 - kNeutralBand, Repelling iff |m| > 1 + kNeutralBand.
[[nodiscard]] Stability classify_multiplier(double multiplier) noexcept;

struct FixedPointRecord {
    double control;   ///< r (electrical) or alpha (appendix)
    double x_star;
    double multiplier;
    Stability stability;
    double residual;
};

struct ScanResult {
    std::vector<double> parameter_grid;
    std::vector<std::vector<double>> retained_points;
    /// nats/iteration; NaN where the orbit did not complete or log|f'| was degenerate.
    std::vector<double> lyapunov;
    std::vector<OrbitStatus> status;
};

inline constexpr std::size_t kDefaultIterations = 2000;
inline constexpr std::size_t kDefaultTransient = 1000;
inline constexpr double kDefaultSeed = 1.2;

/// `steps` values from lo to hi inclusive; the endpoints are exact.
[[nodiscard]] std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

/// Iterates the map from x0 and keeps iterates transient+1 ... n.
/// Throws InvalidInput when n <= transient, x0 is inside the singularity guard,
/// or the parameters are invalid. Abnormal termination is recorded in the status.
[[nodiscard]] Orbit generate_orbit(const MapSpec& spec, double x0, std::size_t n, std::size_t transient);

/// Newton on f(x) - x from n_seeds evenly spaced seeds across [lo, hi].
/// Seeds that fail to converge are dropped. Roots closer than
/// kRootMergeDistance are merged keeping the smaller residual. Sorted by x_star.
[[nodiscard]] std::vector<FixedPointRecord> find_fixed_points(const MapSpec& spec, std::pair<double, double> interval,
                                                              std::size_t n_seeds);

/// Mean of log|f'(x_k)| over the retained samples of a completed orbit.
[[nodiscard]] double lyapunov_exponent(const Orbit& orbit);

[[nodiscard]] double lyapunov_exponent(const MapSpec& spec, double x0, std::size_t n, std::size_t transient);

struct ScanSettings {
    std::pair<double, double> range;
    std::size_t steps = 2;
    double x0 = kDefaultSeed;
    std::size_t n = kDefaultIterations;
    std::size_t transient = kDefaultTransient;
    std::size_t retain = 1;
    unsigned workers = 1;
};

/// Sweeps the control parameter of `base` over a linear grid. Per-point failures
/// are recorded in the result; the scan itself never aborts.
[[nodiscard]] ScanResult parameter_scan(const MapSpec& base, const ScanSettings& settings);

/// A point where scan output and the fixed points of the map tell different stories.
struct ConsistencyNote {
    double control;
    std::string message;
};

/// Cross-checks each scan entry against the fixed points found in `interval`:
/// positive exponents, repelling fixed points, and orbits that settle away from
/// every fixed point are each reported.
[[nodiscard]] std::vector<ConsistencyNote> compare_with_fixed_points(const MapSpec& base, const ScanResult& scan,
                                                                     std::pair<double, double> interval,
                                                                     std::size_t n_seeds = 64);

} // namespace zetadyn
