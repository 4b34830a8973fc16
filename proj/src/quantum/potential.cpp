#include "potential_terms.hpp"

#include "zetadyn/errors.hpp"
#include "zetadyn/quantum.hpp"

#include <cmath>
#include <string>

namespace zetadyn {

namespace detail {

PotentialTerms potential_terms(const PotentialSpec& spec, double x)
{
    return std::visit(
        [x](const auto& p) -> PotentialTerms {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, potential::Zero>) {
                return {};
            } else if constexpr (std::is_same_v<T, potential::MontgomeryApprox>) {
                if (!(x > 0.0)) {
                    throw DomainError("1/(C x) potential needs x > 0");
                }
                return {Complex(p.A + 1.0 / (p.C * x)), 0.0, 0.0};
            } else if constexpr (std::is_same_v<T, potential::MontgomeryAppendix>) {
                if (!(x > 0.0)) {
                    throw DomainError("appendix potential needs x > 0");
                }
                const double x2 = x * x;
                const double x3 = x2 * x;
                const double psi1 = -1.0 / x2;
                const double psi2 = 1.0 / x3;
                return {Complex(-p.alpha * p.alpha / (2.0 * p.m * x2)), -psi1 / (4.0 * p.m),
                        (p.alpha / (p.m * x3)) * psi2};
            } else {
                if (!(x > 0.0)) {
                    throw DomainError("Yitang potential needs x > 0");
                }
                const double lg = std::log(x);
                if (lg == 0.0) {
                    throw DomainError("Yitang potential is singular at x = 1 (log x = 0)");
                }
                const double prefactor = -p.c * p.c / (p.m * std::pow(x, 2.0 * p.alpha));
                const double exponent = -2.0 * p.alpha;
                if (lg > 0.0 || exponent == std::round(exponent)) {
                    if (lg < 0.0 && !p.allow_complex) {
                        throw DomainError("Yitang potential for x < 1 requires complex mode");
                    }
                    return {Complex(prefactor * std::pow(lg, exponent)), 0.0, 0.0};
                }
                if (!p.allow_complex) {
                    throw DomainError("Yitang potential for x < 1 requires complex mode");
                }
                return {prefactor * std::pow(Complex(lg, 0.0), exponent), 0.0, 0.0};
            }
        },
        spec);
}

} // namespace detail

double GridSpec::spacing() const noexcept { return (x_max - x_min) / static_cast<double>(n_points + 1); }

double GridSpec::point(std::size_t i) const noexcept
{
    return x_min + static_cast<double>(i + 1) * spacing();
}

void GridSpec::validate() const
{
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min)) {
        throw InvalidInput("grid needs finite x_min < x_max");
    }
    if (n_points < 3) {
        throw InvalidInput("grid needs at least 3 interior points");
    }
}

double montgomery_offset(const ElectricalParams& p)
{
    p.validate();
    return 1.0 - 1.0 / (p.r * p.r) + p.R / p.L;
}

potential::MontgomeryApprox montgomery_approx(const ElectricalParams& p) { return {montgomery_offset(p), p.C}; }

Complex evaluate_potential(const PotentialSpec& spec, double x)
{
    const auto t = detail::potential_terms(spec, x);
    return (t.rest + t.psi1_term) + t.psi2_term;
}

double analytic_wavenumber(double A, double m, double E)
{
    if (!(E > A)) {
        throw EvanescentRegime("E <= A: the constant-k solution is not oscillatory");
    }
    if (!(m > 0.0)) {
        throw InvalidInput("mass must be > 0");
    }
    return std::sqrt(2.0 * m * (E - A));
}

double analytic_eigenfunction(double A, double C1, double C2, double m, double E, double x)
{
    const double k = analytic_wavenumber(A, m, E);
    return C1 * std::sin(k * x) + C2 * std::cos(k * x);
}

double von_mangoldt(std::uint64_t n)
{
    if (n == 0) {
        throw InvalidInput("von Mangoldt function is defined for n >= 1");
    }
    if (n == 1) {
        return 0.0;
    }
    std::uint64_t p = 0;
    if (n % 2 == 0) {
        p = 2;
    } else {
        for (std::uint64_t d = 3; d <= n / d; d += 2) {
            if (n % d == 0) {
                p = d;
                break;
            }
        }
        if (p == 0) {
            p = n;
        }
    }
    while (n % p == 0) {
        n /= p;
    }
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

} // namespace zetadyn
