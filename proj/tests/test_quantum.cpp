#include <doctest.h>

#include "zetadyn/errors.hpp"
#include "zetadyn/quantum.hpp"

#include <cmath>
#include <numbers>

using namespace zetadyn;

namespace {

/// Closed-form spectrum of the Dirichlet free-particle stencil, written as
/// (2/(m h^2)) sin^2(j pi / (2(n+1))) to avoid cancellation in 1 - cos.
double free_particle_eigenvalue(std::size_t j, std::size_t n, double h, double m)
{
    const double s = std::sin(static_cast<double>(j) * std::numbers::pi / (2.0 * static_cast<double>(n + 1)));
    return 2.0 * s * s / (m * h * h);
}

/// ||Hv - lv|| / ||v|| with an explicitly expanded matrix-vector product.
double dense_residual(const HamiltonianMatrix& h, Complex lambda, const std::vector<Complex>& v)
{
    const std::size_t n = h.size();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Complex row{};
        for (std::size_t j = 0; j < n; ++j) {
            Complex entry{};
            if (i == j) {
                entry = h.diagonal[i];
            } else if (j + 1 == i) {
                entry = h.off_diagonal[j];
            } else if (i + 1 == j) {
                entry = h.off_diagonal[i];
            }
            row += entry * v[j];
        }
        num += std::norm(row - lambda * v[i]);
        den += std::norm(v[i]);
    }
    return std::sqrt(num / den);
}

/// Smallest-prime-factor sieve used as an independent route to Lambda(n).
std::vector<double> sieve_von_mangoldt(std::size_t limit)
{
    std::vector<std::size_t> spf(limit + 1, 0);
    for (std::size_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            for (std::size_t j = i; j <= limit; j += i) {
                if (spf[j] == 0) {
                    spf[j] = i;
                }
            }
        }
    }
    std::vector<double> lambda(limit + 1, 0.0);
    for (std::size_t n = 2; n <= limit; ++n) {
        std::size_t m = n;
        const std::size_t p = spf[n];
        while (m % p == 0) {
            m /= p;
        }
        lambda[n] = m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
    return lambda;
}

const potential::MontgomeryApprox kApprox{0.06, 0.73};

} // namespace

TEST_CASE("potential values")
{
    CHECK(evaluate_potential(kApprox, 1.0).real() == doctest::Approx(0.06 + 1.0 / 0.73).epsilon(1e-15));
    CHECK(evaluate_potential(kApprox, 1.0).real() == doctest::Approx(1.4298630).epsilon(1e-7));
    CHECK(montgomery_offset(ElectricalParams{1.0, 0.0, 3.0, 0.5}) == 0.0);
    const auto from_circuit = montgomery_approx(ElectricalParams{0.5, 1.0, 2.0, 0.25});
    CHECK(from_circuit.A == doctest::Approx(1.0 - 4.0 + 0.5));
    CHECK(from_circuit.C == 0.25);

    const potential::Yitang yitang{1.0, 1.0, 1.0};
    CHECK(evaluate_potential(yitang, std::numbers::e).real() == doctest::Approx(-std::exp(-2.0)).epsilon(1e-14));
    CHECK(evaluate_potential(yitang, std::numbers::e).real() == doctest::Approx(-0.1353352).epsilon(1e-6));

    // psi1 = -1/x^2 and psi2 = 1/x^3 at x = 2 with alpha = 1, m = 1
    const potential::MontgomeryAppendix appendix{1.0, 1.0};
    CHECK(evaluate_potential(appendix, 2.0).real() == doctest::Approx(-1.0 / 8.0 + 1.0 / 16.0 + 1.0 / 64.0));
    CHECK(evaluate_potential(potential::Zero{}, -3.0) == Complex(0.0, 0.0));
}

TEST_CASE("potential domain errors")
{
    CHECK_THROWS_AS((void)evaluate_potential(kApprox, 0.0), DomainError);
    CHECK_THROWS_AS((void)evaluate_potential(potential::MontgomeryAppendix{1.0, 1.0}, -1.0), DomainError);
    CHECK_THROWS_AS((void)evaluate_potential(potential::Yitang{1.0, 1.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS((void)evaluate_potential(potential::Yitang{1.0, 1.0, 0.75}, 0.5), DomainError);
    const Complex v = evaluate_potential(potential::Yitang{1.0, 1.0, 0.75, true}, 0.5);
    CHECK(v.imag() != 0.0);
    // principal branch: (log x)^(-2a) = |log x|^(-2a) e^{-2 a i pi}
    const double expected_mag = std::pow(0.5, -1.5) * std::pow(std::log(2.0), -1.5);
    CHECK(std::abs(v) == doctest::Approx(expected_mag).epsilon(1e-13));
    CHECK(std::arg(-v) == doctest::Approx(-1.5 * std::numbers::pi + 2.0 * std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("stencil of the free particle")
{
    const auto h = build_hamiltonian(potential::Zero{}, GridSpec{0.0, 1.0, 3}, 1.0);
    CHECK(h.grid.spacing() == 0.25);
    for (const auto& d : h.diagonal) {
        CHECK(d == Complex(16.0, 0.0));
    }
    for (const double o : h.off_diagonal) {
        CHECK(o == -8.0);
    }
    CHECK(h.hermitian);
    CHECK(h.scalar_field == ScalarField::Real);
}

TEST_CASE("scalar field follows the potential")
{
    CHECK(build_hamiltonian(kApprox, GridSpec{0.1, 20.0, 100}, 1.0).hermitian);
    const auto complex_h = build_hamiltonian(potential::Yitang{1.0, 1.0, 0.75, true}, GridSpec{0.2, 0.9, 50}, 1.0);
    CHECK(complex_h.scalar_field == ScalarField::Complex);
    CHECK_FALSE(complex_h.hermitian);
    CHECK_THROWS_AS((void)build_hamiltonian(kApprox, GridSpec{-1.0, 1.0, 3}, 1.0), DomainError);
    CHECK_THROWS_AS((void)build_hamiltonian(kApprox, GridSpec{0.1, 20.0, 2}, 1.0), InvalidInput);
    CHECK_THROWS_AS((void)build_hamiltonian(kApprox, GridSpec{0.1, 20.0, 10}, 0.0), InvalidInput);
}

TEST_CASE("free particle spectrum matches the closed form")
{
    for (const std::size_t n : {50u, 200u, 500u}) {
        const GridSpec grid{0.0, 0.1 * static_cast<double>(n + 1), n};
        const auto h = build_hamiltonian(potential::Zero{}, grid, 1.0);
        for (const auto method : {EigenMethod::Dense, EigenMethod::Arnoldi}) {
            const auto result = eigensolve(h, 6, method);
            REQUIRE(result.eigenvalues.size() == 6);
            for (std::size_t j = 0; j < 6; ++j) {
                const double exact = free_particle_eigenvalue(j + 1, n, grid.spacing(), 1.0);
                CHECK(std::fabs(result.eigenvalues[j].real() - exact) <= 1e-10 * exact);
                CHECK(std::fabs(result.eigenvalues[j].imag()) < 1e-10);
            }
        }
    }
}

TEST_CASE("Arnoldi agrees with the dense solver")
{
    const auto h = build_hamiltonian(kApprox, GridSpec{0.1, 20.0, 500}, 1.0);
    const auto dense = eigensolve(h, 5, EigenMethod::Dense);
    const auto arnoldi = eigensolve(h, 5, EigenMethod::Arnoldi);
    CHECK(method_name(dense) == "dense");
    CHECK(method_name(arnoldi) == "arnoldi");
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK(std::abs(arnoldi.eigenvalues[j] - dense.eigenvalues[j]) <= 1e-8 * std::abs(dense.eigenvalues[j]));
        CHECK(std::fabs(arnoldi.eigenvalues[j].imag()) < 1e-10);
        CHECK(dense_residual(h, arnoldi.eigenvalues[j], arnoldi.eigenvectors[j]) < 1e-8);
        CHECK(dense_residual(h, dense.eigenvalues[j], dense.eigenvectors[j]) < 1e-8);
        if (j > 0) {
            CHECK(dense.eigenvalues[j].real() >= dense.eigenvalues[j - 1].real());
        }
    }
}

TEST_CASE("complex Yitang operator")
{
    const auto h = build_hamiltonian(potential::Yitang{1.0, 1.0, 0.75, true}, GridSpec{0.2, 0.9, 150}, 1.0);
    const auto dense = eigensolve(h, 3, EigenMethod::Dense);
    const auto arnoldi = eigensolve(h, 3, EigenMethod::Arnoldi);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(arnoldi.eigenvalues[j] - dense.eigenvalues[j]) <= 1e-8 * std::abs(dense.eigenvalues[j]));
        CHECK(dense_residual(h, dense.eigenvalues[j], dense.eigenvectors[j]) < 1e-8);
    }
    CHECK(std::fabs(dense.eigenvalues[0].imag()) > 1e-6);
}

TEST_CASE("constant potential offset shifts the spectrum")
{
    const GridSpec grid{0.1, 20.0, 300};
    const auto base = eigensolve(build_hamiltonian(kApprox, grid, 1.0), 4, EigenMethod::Dense);
    for (const double s : {-3.0, 0.5, 10.0}) {
        const auto shifted =
            eigensolve(build_hamiltonian(potential::MontgomeryApprox{kApprox.A + s, kApprox.C}, grid, 1.0), 4);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::fabs(shifted.eigenvalues[j].real() - (base.eigenvalues[j].real() + s)) < 1e-10);
        }
    }
}

TEST_CASE("eigensolve requests and failures")
{
    const auto h = build_hamiltonian(potential::Zero{}, GridSpec{0.0, 1.0, 2000}, 1.0);
    CHECK_THROWS_AS((void)eigensolve(h, 0), InvalidInput);
    CHECK_THROWS_AS((void)eigensolve(h, 2001), InvalidInput);
    try {
        (void)arnoldi_eigensolve(h, 5, {.krylov_dim = 7, .max_restarts = 0, .tolerance = 1e-10});
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.best_residuals.size() == 5);
    }
    const auto small = build_hamiltonian(potential::Zero{}, GridSpec{0.0, 1.0, 5}, 1.0);
    const auto all = eigensolve(small, 5, EigenMethod::Arnoldi);
    CHECK(all.eigenvalues.size() == 5);
}

TEST_CASE("analytic eigenfunction")
{
    CHECK(analytic_eigenfunction(0.06, 1.0, 1.7, 3.8, 0.5, 0.0) == 1.7);
    CHECK(analytic_wavenumber(0.06, 3.8, 0.5) == doctest::Approx(std::sqrt(2.0 * 3.8 * 0.44)).epsilon(1e-15));
    CHECK(analytic_wavenumber(0.06, 3.8, 0.5) == doctest::Approx(1.8286607).epsilon(1e-7));
    const double k = analytic_wavenumber(0.06, 3.8, 0.5);
    CHECK(analytic_eigenfunction(0.06, 1.0, 1.7, 3.8, 0.5, 2.0) ==
          doctest::Approx(std::sin(2.0 * k) + 1.7 * std::cos(2.0 * k)));
    CHECK_THROWS_AS((void)analytic_wavenumber(0.06, 3.8, 0.06), EvanescentRegime);
}

TEST_CASE("von Mangoldt function")
{
    CHECK(von_mangoldt(1) == 0.0);
    CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)));
    CHECK(von_mangoldt(12) == 0.0);
    CHECK(von_mangoldt(49) == doctest::Approx(std::log(7.0)));
    CHECK(von_mangoldt(97) == doctest::Approx(std::log(97.0)));
    CHECK(von_mangoldt(4294967311ULL) == doctest::Approx(std::log(4294967311.0)));
    CHECK_THROWS_AS((void)von_mangoldt(0), InvalidInput);

    const auto table = sieve_von_mangoldt(10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        CHECK(von_mangoldt(n) == table[n]);
    }
}

TEST_CASE("Chebyshev identity")
{
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        double sum = 0.0;
        for (std::uint64_t d = 1; d <= n; ++d) {
            if (n % d == 0) {
                sum += von_mangoldt(d);
            }
        }
        CHECK(std::fabs(sum - std::log(static_cast<double>(n))) < 1e-9);
    }
}

TEST_CASE("chaotic operator assembly")
{
    const GridSpec grid{0.0, 1.0, 20};
    const auto free = build_hamiltonian(potential::Zero{}, grid, 1.0);
    const auto reduced = assemble_chaotic_operator(free, {1.0, 0.0, 0.0, 0.0});
    CHECK(reduced.diagonal == free.diagonal);
    CHECK(reduced.off_diagonal == free.off_diagonal);

    const potential::MontgomeryAppendix appendix{0.4, 2.0};
    const GridSpec positive{0.5, 10.0, 80};
    const auto plain = build_hamiltonian(appendix, positive, 2.0);
    const auto assembled = assemble_chaotic_operator(plain, ChaoticOperatorSpec{});
    CHECK(assembled.diagonal == plain.diagonal);
    CHECK(assembled.off_diagonal == plain.off_diagonal);
    CHECK(build_hamiltonian(appendix, positive, 2.0, ChaoticOperatorSpec{}).diagonal == plain.diagonal);

    // dropping the psi terms leaves only -alpha^2/(2 m x^2) on top of the stencil
    const auto rest_only = assemble_chaotic_operator(plain, {1.0, 0.0, 0.0, 0.0});
    const double x0 = positive.point(0);
    CHECK(rest_only.diagonal[0].real() ==
          doctest::Approx(plain.diagonal[0].real() - 1.0 / (4.0 * 2.0 * x0 * x0) - (0.4 / (2.0 * x0 * x0 * x0)) / (x0 * x0 * x0)));

    const GridSpec integers{0.0, 51.0, 50};
    const auto lattice = assemble_chaotic_operator(build_hamiltonian(potential::Zero{}, integers, 1.0), {0.0, 0.0, 0.0, 1.0});
    const auto table = sieve_von_mangoldt(50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(lattice.diagonal[i] == Complex(table[i + 1], 0.0));
    }
    for (const double o : lattice.off_diagonal) {
        CHECK(o == 0.0);
    }
    CHECK_THROWS_AS((void)assemble_chaotic_operator(free, {1.0, 1.0, 1.0, 1.0}), DomainError);
}
