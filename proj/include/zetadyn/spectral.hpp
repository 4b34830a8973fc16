#pragma once

#include "zetadyn/dynamics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace zetadyn {

/// One-sided periodogram. power[k] = c_k |X_k|^2 / n with c_k = 2 for interior
/// bins and 1 for the DC and Nyquist bins, so that sum(power) = sum(x^2) of the
/// (optionally mean-removed) input.
struct Spectrum {
    std::vector<double> frequencies; ///< cycles/iteration, k/n for k = 0 ... n/2
    std::vector<double> power;
    std::size_t n_samples = 0;
    bool mean_removed = false;
};

struct SpectralPeak {
    double frequency;
    double power;
};

struct SpectrumOptions {
    bool remove_mean = false;
    bool hann_window = false;
};

[[nodiscard]] Spectrum power_spectrum(std::span<const double> samples, SpectrumOptions options = {});

/// Throws InvalidInput for an orbit that did not complete, TooShort below 4 samples.
[[nodiscard]] Spectrum power_spectrum(const Orbit& orbit, SpectrumOptions options = {});

/// The top_k bins by power, highest first; equal powers go to the lower frequency first.
[[nodiscard]] std::vector<SpectralPeak> dominant_frequencies(const Spectrum& s, std::size_t top_k);

} // namespace zetadyn
