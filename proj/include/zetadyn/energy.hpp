#pragma once

#include "zetadyn/dynamics.hpp"

#include <span>
#include <vector>

namespace zetadyn {

/// Circuit reading of an orbit: the state is taken as the inductor current
/// analog for E_L = L x^2 / 2 and as the capacitor charge analog for
/// E_C = x^2 / (2C). transfer_rate[k] = E_L[k + 1] - E_L[k].
struct EnergySeries {
    std::vector<double> e_inductor;
    std::vector<double> e_capacitor;
    std::vector<double> transfer_rate;
};

/// Throws TooShort below 2 samples.
[[nodiscard]] EnergySeries energy_series(const Orbit& orbit, const ElectricalParams& p);

/// Left-to-right sum; the order is part of the contract so results are bit-reproducible.
[[nodiscard]] double ordered_sum(std::span<const double> values) noexcept;

struct EnergyPoint {
    double control; ///< r for energy_vs_r, C for energy_vs_capacitance
    OrbitStatus status;
    double mean_e_inductor; ///< NaN unless status is completed
    double mean_e_capacitor;
};

struct TransferPoint {
    double control;
    OrbitStatus status;
    double mean_transfer_rate;
};

/// Post-transient mean energies over a linear r grid. `settings.retain` is ignored.
[[nodiscard]] std::vector<EnergyPoint> energy_vs_r(const ElectricalParams& base, const ScanSettings& settings);

/// The same averages at fixed r over an explicit list of capacitances.
[[nodiscard]] std::vector<EnergyPoint> energy_vs_capacitance(const ElectricalParams& base,
                                                             std::span<const double> capacitances,
                                                             const ScanSettings& settings);

[[nodiscard]] std::vector<TransferPoint> transfer_rate_vs_r(const ElectricalParams& base, const ScanSettings& settings);

} // namespace zetadyn
