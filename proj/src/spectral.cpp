#include "zetadyn/spectral.hpp"

#include "zetadyn/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace zetadyn {

namespace {

// fftw planning is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

} // namespace

Spectrum power_spectrum(std::span<const double> samples, SpectrumOptions options)
{
    const std::size_t n = samples.size();
    if (n < 4) {
        throw TooShort("power spectrum needs at least 4 samples");
    }
    const std::size_t bins = n / 2 + 1;

    FftwBuffer<double> input(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    FftwBuffer<fftw_complex> output(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
    if (!input || !output) {
        throw std::bad_alloc();
    }

    double mean = 0.0;
    if (options.remove_mean) {
        for (const double x : samples) {
            mean += x;
        }
        mean /= static_cast<double>(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double v = samples[i] - mean;
        if (options.hann_window) {
            v *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1)));
        }
        input[i] = v;
    }

    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), input.get(), output.get(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    Spectrum s;
    s.n_samples = n;
    s.mean_removed = options.remove_mean;
    s.frequencies.resize(bins);
    s.power.resize(bins);
    const auto nd = static_cast<double>(n);
    for (std::size_t k = 0; k < bins; ++k) {
        const double re = output[k][0];
        const double im = output[k][1];
        const bool self_conjugate = k == 0 || (n % 2 == 0 && k == n / 2);
        s.frequencies[k] = static_cast<double>(k) / nd;
        s.power[k] = (self_conjugate ? 1.0 : 2.0) * (re * re + im * im) / nd;
    }
    return s;
}

Spectrum power_spectrum(const Orbit& orbit, SpectrumOptions options)
{
    if (!orbit.completed()) {
        throw InvalidInput("power spectrum needs a completed orbit");
    }
    return power_spectrum(std::span<const double>(orbit.samples), options);
}

std::vector<SpectralPeak> dominant_frequencies(const Spectrum& s, std::size_t top_k)
{
    if (top_k == 0) {
        throw InvalidInput("top_k must be >= 1");
    }
    std::vector<std::size_t> order(s.power.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.power[a] > s.power[b]; });
    order.resize(std::min(top_k, order.size()));

    std::vector<SpectralPeak> peaks;
    peaks.reserve(order.size());
    for (const auto k : order) {
        peaks.push_back({s.frequencies[k], s.power[k]});
    }
    return peaks;
}

} // namespace zetadyn
