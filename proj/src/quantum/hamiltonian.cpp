#include "potential_terms.hpp"

#include "zetadyn/errors.hpp"
#include "zetadyn/quantum.hpp"

#include <cmath>

namespace zetadyn {

namespace {

void check_mass(double m)
{
    if (!(std::isfinite(m) && m > 0.0)) {
        throw InvalidInput("mass must be finite and > 0");
    }
}

void finish(HamiltonianMatrix& h)
{
    bool real = true;
    for (const auto& d : h.diagonal) {
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
            throw DomainError("Hamiltonian diagonal is not finite");
        }
        real = real && d.imag() == 0.0;
    }
    h.scalar_field = real ? ScalarField::Real : ScalarField::Complex;
    h.hermitian = real;
}

double lattice_von_mangoldt(double x)
{
    const double nearest = std::round(x);
    if (std::fabs(x - nearest) > 1e-9 * std::max(1.0, std::fabs(x)) || nearest < 1.0) {
        throw DomainError("von Mangoldt term needs grid points on positive integers");
    }
    return von_mangoldt(static_cast<std::uint64_t>(nearest));
}

} // namespace

HamiltonianMatrix build_hamiltonian(const PotentialSpec& spec, const GridSpec& grid, double mass,
                                    std::optional<ChaoticOperatorSpec> extra)
{
    grid.validate();
    check_mass(mass);

    HamiltonianMatrix h;
    h.grid = grid;
    h.mass = mass;
    h.potential = spec;
    const double step = grid.spacing();
    const double kinetic_diag = 1.0 / (mass * step * step);
    const double kinetic_off = -1.0 / (2.0 * mass * step * step);

    h.diagonal.resize(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        h.diagonal[i] = kinetic_diag + evaluate_potential(spec, grid.point(i));
    }
    h.off_diagonal.assign(grid.n_points - 1, kinetic_off);
    finish(h);

    if (extra) {
        return assemble_chaotic_operator(h, *extra);
    }
    return h;
}

HamiltonianMatrix assemble_chaotic_operator(const HamiltonianMatrix& base, const ChaoticOperatorSpec& spec)
{
    for (const double c : {spec.a_coeff, spec.b_coeff, spec.d_coeff, spec.e_coeff}) {
        if (!std::isfinite(c)) {
            throw InvalidInput("chaotic operator coefficients must be finite");
        }
    }
    base.grid.validate();
    check_mass(base.mass);

    HamiltonianMatrix h;
    h.grid = base.grid;
    h.mass = base.mass;
    h.potential = base.potential;
    const double step = h.grid.spacing();
    const double kinetic_diag = 1.0 / (h.mass * step * step);
    const double kinetic_off = -1.0 / (2.0 * h.mass * step * step);

    h.diagonal.resize(h.grid.n_points);
    for (std::size_t i = 0; i < h.grid.n_points; ++i) {
        const double x = h.grid.point(i);
        const auto t = detail::potential_terms(h.potential, x);
        Complex d = spec.a_coeff * kinetic_diag + ((t.rest + spec.b_coeff * t.psi1_term) + spec.d_coeff * t.psi2_term);
        if (spec.e_coeff != 0.0) {
            d += spec.e_coeff * lattice_von_mangoldt(x);
        }
        h.diagonal[i] = d;
    }
    h.off_diagonal.assign(h.grid.n_points - 1, spec.a_coeff * kinetic_off);
    finish(h);
    return h;
}

std::vector<Complex> apply_hamiltonian(const HamiltonianMatrix& h, std::span<const Complex> v)
{
    const std::size_t n = h.size();
    if (v.size() != n) {
        throw InvalidInput("vector length does not match the Hamiltonian");
    }
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = h.diagonal[i] * v[i];
        if (i > 0) {
            acc += h.off_diagonal[i - 1] * v[i - 1];
        }
        if (i + 1 < n) {
            acc += h.off_diagonal[i] * v[i + 1];
        }
        y[i] = acc;
    }
    return y;
}

double residual_norm(const HamiltonianMatrix& h, Complex lambda, std::span<const Complex> v)
{
    const auto hv = apply_hamiltonian(h, v);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        num += std::norm(hv[i] - lambda * v[i]);
        den += std::norm(v[i]);
    }
    return std::sqrt(num / den);
}

} // namespace zetadyn
