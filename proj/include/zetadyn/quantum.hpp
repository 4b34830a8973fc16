#pragma once

#include "zetadyn/maps.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace zetadyn {

using Complex = std::complex<double>;

/// Uniform interior grid with Dirichlet ends: x_i = x_min + (i + 1) h,
/// h = (x_max - x_min) / (n_points + 1).
struct GridSpec {
    double x_min = 0.1;
    double x_max = 20.0;
    std::size_t n_points = 1000;

    [[nodiscard]] double spacing() const noexcept;
    [[nodiscard]] double point(std::size_t i) const noexcept;
    void validate() const;
};

namespace potential {
struct Zero {};
/// V = A + 1/(C x).
struct MontgomeryApprox {
    double A;
    double C;
};
/// V = -alpha^2/(2 m x^2) - psi1/(4m) + (alpha/(m x^3)) psi2, psi1 = -1/x^2, psi2 = 1/x^3.
struct MontgomeryAppendix {
    double alpha;
    double m;
};
/// V = -c^2/(m x^(2 alpha)) (log x)^(-2 alpha). For 0 < x < 1 the principal
/// branch of the power is used, which is only allowed with allow_complex.
struct Yitang {
    double c;
    double m;
    double alpha;
    bool allow_complex = false;
};
} // namespace potential

using PotentialSpec =
    std::variant<potential::Zero, potential::MontgomeryApprox, potential::MontgomeryAppendix, potential::Yitang>;

/// A = 1 - 1/r^2 + R/L, the constant part of the approximated potential.
[[nodiscard]] double montgomery_offset(const ElectricalParams& p);

[[nodiscard]] potential::MontgomeryApprox montgomery_approx(const ElectricalParams& p);

/// Throws DomainError outside the potential's domain.
[[nodiscard]] Complex evaluate_potential(const PotentialSpec& spec, double x);

/// Scalar weights of the kinetic term, the psi1 and psi2 terms of the appendix
/// potential, and the von Mangoldt term. Defaults reduce to the plain Hamiltonian.
struct ChaoticOperatorSpec {
    double a_coeff = 1.0;
    double b_coeff = 1.0;
    double d_coeff = 1.0;
    double e_coeff = 0.0;
};

enum class ScalarField { Real, Complex };

/// Tridiagonal -(1/2m) d^2/dx^2 + V on a Dirichlet grid (hbar = 1).
/// The off-diagonal is real and symmetric; only the diagonal can be complex.
struct HamiltonianMatrix {
    GridSpec grid;
    double mass = 1.0;
    PotentialSpec potential;
    std::vector<Complex> diagonal;
    std::vector<double> off_diagonal;
    ScalarField scalar_field = ScalarField::Real;
    bool hermitian = true;

    [[nodiscard]] std::size_t size() const noexcept { return diagonal.size(); }
};

[[nodiscard]] HamiltonianMatrix build_hamiltonian(const PotentialSpec& spec, const GridSpec& grid, double mass,
                                                  std::optional<ChaoticOperatorSpec> extra = std::nullopt);

/// a * kinetic + (rest of V) + b * psi1 term + d * psi2 term + e * Lambda(round x).
/// The psi terms are nonzero only for the appendix potential. A nonzero e_coeff
/// requires every grid point to be an integer.
[[nodiscard]] HamiltonianMatrix assemble_chaotic_operator(const HamiltonianMatrix& base,
                                                          const ChaoticOperatorSpec& spec);

/// y = H v
[[nodiscard]] std::vector<Complex> apply_hamiltonian(const HamiltonianMatrix& h, std::span<const Complex> v);

/// ||H v - lambda v|| / ||v||
[[nodiscard]] double residual_norm(const HamiltonianMatrix& h, Complex lambda, std::span<const Complex> v);

enum class EigenMethod { Auto, Dense, Arnoldi };

inline constexpr std::size_t kDenseLimit = 2000;
inline constexpr double kReportedResidual = 1e-8;

namespace eigen_method {
struct Dense {};
struct Arnoldi {
    std::size_t krylov_dim;
    std::size_t restarts;
};
} // namespace eigen_method

struct EigenResult {
    std::vector<Complex> eigenvalues; ///< ascending real part
    std::vector<double> residual_norms;
    std::vector<std::vector<Complex>> eigenvectors;
    std::variant<eigen_method::Dense, eigen_method::Arnoldi> method;
};

[[nodiscard]] std::string_view method_name(const EigenResult& r) noexcept;

/// The k eigenvalues of smallest real part. Auto uses the dense solver up to
/// kDenseLimit points and shift-invert restarted Arnoldi above that.
/// Throws NoConvergence if a pair cannot be brought below kReportedResidual.
[[nodiscard]] EigenResult eigensolve(const HamiltonianMatrix& h, std::size_t k, EigenMethod method = EigenMethod::Auto);

struct ArnoldiOptions {
    std::size_t krylov_dim = 0; ///< 0 selects max(2k + 10, 30)
    std::size_t max_restarts = 300;
    double tolerance = 1e-10;
};

[[nodiscard]] EigenResult arnoldi_eigensolve(const HamiltonianMatrix& h, std::size_t k, ArnoldiOptions options = {});
[[nodiscard]] EigenResult dense_eigensolve(const HamiltonianMatrix& h, std::size_t k);

/// k = sqrt(2 m (E - A)); throws EvanescentRegime for E <= A.
[[nodiscard]] double analytic_wavenumber(double A, double m, double E);

/// C1 sin(k x) + C2 cos(k x) with k from analytic_wavenumber.
[[nodiscard]] double analytic_eigenfunction(double A, double C1, double C2, double m, double E, double x);

/// log p if n = p^k for a prime p, else 0. Throws InvalidInput for n = 0.
[[nodiscard]] double von_mangoldt(std::uint64_t n);

} // namespace zetadyn
