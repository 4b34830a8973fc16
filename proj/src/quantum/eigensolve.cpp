#include "zetadyn/errors.hpp"
#include "zetadyn/quantum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

namespace zetadyn {

namespace {

bool by_real_part(const Complex& a, const Complex& b)
{
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

void check_request(const HamiltonianMatrix& h, std::size_t k)
{
    if (k == 0 || k > h.size()) {
        throw InvalidInput("requested eigenvalue count must be in [1, n_points]");
    }
    if (h.off_diagonal.size() + 1 != h.size()) {
        throw InvalidInput("malformed tridiagonal matrix");
    }
}

void attach_residuals(const HamiltonianMatrix& h, EigenResult& r)
{
    r.residual_norms.clear();
    for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) {
        r.residual_norms.push_back(residual_norm(h, r.eigenvalues[j], r.eigenvectors[j]));
    }
    if (std::any_of(r.residual_norms.begin(), r.residual_norms.end(),
                    [](double res) { return !(res < kReportedResidual); })) {
        throw NoConvergence("eigenpair residual above 1e-8", r.residual_norms);
    }
}

} // namespace

std::string_view method_name(const EigenResult& r) noexcept
{
    return std::holds_alternative<eigen_method::Dense>(r.method) ? "dense" : "arnoldi";
}

EigenResult dense_eigensolve(const HamiltonianMatrix& h, std::size_t k)
{
    check_request(h, k);
    const auto n = static_cast<Eigen::Index>(h.size());
    EigenResult out;
    out.method = eigen_method::Dense{};

    if (h.hermitian) {
        Eigen::VectorXd diag(n);
        Eigen::VectorXd sub(n - 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            diag(i) = h.diagonal[static_cast<std::size_t>(i)].real();
        }
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            sub(i) = h.off_diagonal[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        if (solver.info() != Eigen::Success) {
            throw NoConvergence("tridiagonal QR iteration failed", {});
        }
        // eigenvalues come back ascending
        for (std::size_t j = 0; j < k; ++j) {
            const auto col = static_cast<Eigen::Index>(j);
            out.eigenvalues.emplace_back(solver.eigenvalues()(col), 0.0);
            std::vector<Complex> v(h.size());
            for (Eigen::Index i = 0; i < n; ++i) {
                v[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, col);
            }
            out.eigenvectors.push_back(std::move(v));
        }
    } else {
        Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            dense(i, i) = h.diagonal[static_cast<std::size_t>(i)];
            if (i + 1 < n) {
                dense(i, i + 1) = h.off_diagonal[static_cast<std::size_t>(i)];
                dense(i + 1, i) = h.off_diagonal[static_cast<std::size_t>(i)];
            }
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense, true);
        if (solver.info() != Eigen::Success) {
            throw NoConvergence("complex Schur decomposition failed", {});
        }
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return by_real_part(solver.eigenvalues()(a), solver.eigenvalues()(b));
        });
        for (std::size_t j = 0; j < k; ++j) {
            const Eigen::Index col = order[j];
            out.eigenvalues.push_back(solver.eigenvalues()(col));
            std::vector<Complex> v(h.size());
            for (Eigen::Index i = 0; i < n; ++i) {
                v[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, col);
            }
            out.eigenvectors.push_back(std::move(v));
        }
    }
    attach_residuals(h, out);
    return out;
}

EigenResult eigensolve(const HamiltonianMatrix& h, std::size_t k, EigenMethod method)
{
    check_request(h, k);
    switch (method) {
    case EigenMethod::Dense:
        return dense_eigensolve(h, k);
    case EigenMethod::Arnoldi:
        return arnoldi_eigensolve(h, k);
    case EigenMethod::Auto:
        break;
    }
    return h.size() <= kDenseLimit ? dense_eigensolve(h, k) : arnoldi_eigensolve(h, k);
}

} // namespace zetadyn
