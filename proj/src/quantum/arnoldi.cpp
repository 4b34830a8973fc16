#include "zetadyn/errors.hpp"
#include "zetadyn/quantum.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace zetadyn {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr std::uint64_t kStartSeed = 0x5eed2024;

/// (H - sigma I)^{-1} applied through a sparse LU factorization.
class ShiftInvert {
public:
    ShiftInvert(const HamiltonianMatrix& h, Complex sigma)
    {
        const auto n = static_cast<Eigen::Index>(h.size());
        std::vector<Eigen::Triplet<Complex>> entries;
        entries.reserve(3 * h.size());
        for (Eigen::Index i = 0; i < n; ++i) {
            entries.emplace_back(i, i, h.diagonal[static_cast<std::size_t>(i)] - sigma);
            if (i + 1 < n) {
                const double off = h.off_diagonal[static_cast<std::size_t>(i)];
                entries.emplace_back(i, i + 1, off);
                entries.emplace_back(i + 1, i, off);
            }
        }
        Eigen::SparseMatrix<Complex> a(n, n);
        a.setFromTriplets(entries.begin(), entries.end());
        a.makeCompressed();
        lu_.compute(a);
        if (lu_.info() != Eigen::Success) {
            throw NoConvergence("shifted operator is singular", {});
        }
    }

    [[nodiscard]] Vector operator()(const Vector& x) const { return lu_.solve(x); }

private:
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu_;
};

/// A shift strictly left of every Gershgorin disc, so the wanted (smallest
/// real part) eigenvalues become the largest in magnitude after inversion.
Complex left_shift(const HamiltonianMatrix& h)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) {
            radius += std::fabs(h.off_diagonal[i - 1]);
        }
        if (i + 1 < n) {
            radius += std::fabs(h.off_diagonal[i]);
        }
        lo = std::min(lo, h.diagonal[i].real() - radius);
        hi = std::max(hi, h.diagonal[i].real() + radius);
    }
    double margin = 1e-2 * (hi - lo);
    if (!(margin > 0.0)) {
        margin = 1.0;
    }
    return {lo - margin, 0.0};
}

/// Largest Gershgorin row bound, used as the scale for attainable residuals.
double norm_bound(const HamiltonianMatrix& h)
{
    double bound = 0.0;
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(h.diagonal[i]);
        if (i > 0) {
            row += std::fabs(h.off_diagonal[i - 1]);
        }
        if (i + 1 < n) {
            row += std::fabs(h.off_diagonal[i]);
        }
        bound = std::max(bound, row);
    }
    return bound;
}

Vector start_vector(Eigen::Index n, std::mt19937_64& gen)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = dist(gen);
    }
    return v;
}

struct Ritz {
    Complex lambda;
    Vector vector;
    double residual;
};

class RestartedArnoldi {
public:
    RestartedArnoldi(const HamiltonianMatrix& h, std::size_t k, const ArnoldiOptions& options)
        : h_(h), k_(static_cast<Eigen::Index>(k)), options_(options), sigma_(left_shift(h)), op_(h, sigma_),
          gen_(kStartSeed)
    {
        n_ = static_cast<Eigen::Index>(h.size());
        const std::size_t requested = options.krylov_dim != 0 ? options.krylov_dim : std::max<std::size_t>(2 * k + 10, 30);
        m_ = std::min<Eigen::Index>(static_cast<Eigen::Index>(requested), n_);
        if (m_ < k_) {
            throw InvalidInput("Krylov dimension must be at least the requested eigenvalue count");
        }
        tolerance_ = std::max(options.tolerance, 16.0 * std::numeric_limits<double>::epsilon() * norm_bound(h));
        basis_ = Matrix::Zero(n_, m_ + 1);
        hess_ = Matrix::Zero(m_ + 1, m_);
        Vector v0 = start_vector(n_, gen_);
        basis_.col(0) = v0 / v0.norm();
    }

    EigenResult run()
    {
        Eigen::Index filled = 0;
        std::vector<double> best;
        double best_worst = std::numeric_limits<double>::infinity();

        for (std::size_t restart = 0;; ++restart) {
            extend(filled);
            Matrix hm = hess_.topLeftCorner(m_, m_);
            Eigen::ComplexEigenSolver<Matrix> es(hm, true);
            if (es.info() != Eigen::Success) {
                throw NoConvergence("projected eigenproblem failed", best);
            }

            std::vector<Eigen::Index> order(static_cast<std::size_t>(m_));
            std::iota(order.begin(), order.end(), Eigen::Index{0});
            std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
                return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
            });

            std::vector<Ritz> wanted;
            double worst = 0.0;
            for (Eigen::Index j = 0; j < k_; ++j) {
                wanted.push_back(ritz_pair(es.eigenvectors().col(order[static_cast<std::size_t>(j)])));
                worst = std::max(worst, wanted.back().residual);
            }
            if (worst < best_worst) {
                best_worst = worst;
                best.clear();
                for (const auto& w : wanted) {
                    best.push_back(w.residual);
                }
            }
            if (worst < tolerance_) {
                return finish(std::move(wanted), restart);
            }
            if (restart >= options_.max_restarts) {
                throw NoConvergence("Arnoldi restart cap reached", best);
            }

            std::vector<Complex> shifts;
            const Eigen::Index keep = kept_dimension();
            for (Eigen::Index j = keep; j < m_; ++j) {
                shifts.push_back(es.eigenvalues()(order[static_cast<std::size_t>(j)]));
            }
            filled = implicit_restart(hm, shifts, keep);
        }
    }

private:
    Eigen::Index kept_dimension() const
    {
        Eigen::Index keep = k_ + (m_ - k_) / 2;
        return std::clamp<Eigen::Index>(keep, k_, m_ - 1);
    }

    /// Grows the Arnoldi factorization from `from` columns to m_ columns with
    /// classical Gram-Schmidt plus one reorthogonalization pass.
    void extend(Eigen::Index from)
    {
        for (Eigen::Index j = from; j < m_; ++j) {
            Vector w = op_(basis_.col(j));
            const auto q = basis_.leftCols(j + 1);
            Vector coeffs = q.adjoint() * w;
            w -= q * coeffs;
            Vector again = q.adjoint() * w;
            w -= q * again;
            coeffs += again;
            hess_.col(j).head(j + 1) = coeffs;

            const double beta = w.norm();
            if (j + 1 >= n_) {
                hess_(j + 1, j) = 0.0;
                basis_.col(j + 1).setZero();
            } else if (beta <= 1e-14 * std::max(1.0, coeffs.norm())) {
                // invariant subspace: continue with a fresh orthogonal direction
                hess_(j + 1, j) = 0.0;
                basis_.col(j + 1) = orthogonal_direction(j + 1);
            } else {
                hess_(j + 1, j) = beta;
                basis_.col(j + 1) = w / beta;
            }
        }
    }

    Vector orthogonal_direction(Eigen::Index count)
    {
        Vector v = start_vector(n_, gen_);
        const auto q = basis_.leftCols(count);
        for (int pass = 0; pass < 2; ++pass) {
            v -= q * (q.adjoint() * v);
        }
        return v / v.norm();
    }

    Ritz ritz_pair(const Vector& y) const
    {
        Vector x = basis_.leftCols(m_) * y;
        x /= x.norm();
        std::vector<Complex> xs(x.data(), x.data() + x.size());
        const auto hx = apply_hamiltonian(h_, xs);
        Complex rq(0.0, 0.0);
        for (Eigen::Index i = 0; i < n_; ++i) {
            rq += std::conj(x(i)) * hx[static_cast<std::size_t>(i)];
        }
        if (h_.hermitian) {
            rq = {rq.real(), 0.0};
        }
        return {rq, x, residual_norm(h_, rq, xs)};
    }

    /// Applies the unwanted Ritz values as exact shifts and truncates the
    /// factorization to `keep` columns. Returns the new filled dimension.
    Eigen::Index implicit_restart(Matrix hm, const std::vector<Complex>& shifts, Eigen::Index keep)
    {
        Matrix q = Matrix::Identity(m_, m_);
        const double eps = std::numeric_limits<double>::epsilon();
        for (const Complex mu : shifts) {
            Matrix shifted = hm - mu * Matrix::Identity(m_, m_);
            Eigen::HouseholderQR<Matrix> qr(shifted);
            Matrix qj = qr.householderQ();
            hm = qj.adjoint() * hm * qj;
            q = q * qj;
            for (Eigen::Index c = 0; c < m_; ++c) {
                for (Eigen::Index r = c + 2; r < m_; ++r) {
                    hm(r, c) = 0.0;
                }
            }
            for (Eigen::Index i = 0; i + 1 < m_; ++i) {
                if (std::abs(hm(i + 1, i)) < eps * (std::abs(hm(i, i)) + std::abs(hm(i + 1, i + 1)))) {
                    hm(i + 1, i) = 0.0;
                }
            }
        }

        const Complex beta_keep = hm(keep, keep - 1);
        const Complex tail = q(m_ - 1, keep - 1);
        Vector residual = basis_.leftCols(m_) * q.col(keep) * beta_keep + basis_.col(m_) * hess_(m_, m_ - 1) * tail;

        Matrix kept = basis_.leftCols(m_) * q.leftCols(keep);
        basis_.leftCols(keep) = kept;
        hess_.setZero();
        hess_.topLeftCorner(keep, keep) = hm.topLeftCorner(keep, keep);

        const double beta = residual.norm();
        if (beta <= 1e-14) {
            hess_(keep, keep - 1) = 0.0;
            basis_.col(keep) = orthogonal_direction(keep);
        } else {
            hess_(keep, keep - 1) = beta;
            basis_.col(keep) = residual / beta;
        }
        return keep;
    }

    EigenResult finish(std::vector<Ritz> wanted, std::size_t restarts) const
    {
        std::stable_sort(wanted.begin(), wanted.end(), [](const Ritz& a, const Ritz& b) {
            if (a.lambda.real() != b.lambda.real()) {
                return a.lambda.real() < b.lambda.real();
            }
            return a.lambda.imag() < b.lambda.imag();
        });
        EigenResult out;
        out.method = eigen_method::Arnoldi{static_cast<std::size_t>(m_), restarts};
        for (auto& w : wanted) {
            out.eigenvalues.push_back(w.lambda);
            out.residual_norms.push_back(w.residual);
            out.eigenvectors.emplace_back(w.vector.data(), w.vector.data() + w.vector.size());
        }
        return out;
    }

    const HamiltonianMatrix& h_;
    Eigen::Index k_;
    ArnoldiOptions options_;
    Complex sigma_;
    double tolerance_ = 0.0;
    ShiftInvert op_;
    std::mt19937_64 gen_;
    Eigen::Index n_ = 0;
    Eigen::Index m_ = 0;
    Matrix basis_;
    Matrix hess_;
};

} // namespace

EigenResult arnoldi_eigensolve(const HamiltonianMatrix& h, std::size_t k, ArnoldiOptions options)
{
    if (k == 0 || k > h.size()) {
        throw InvalidInput("requested eigenvalue count must be in [1, n_points]");
    }
    RestartedArnoldi solver(h, k, options);
    EigenResult result = solver.run();
    if (std::any_of(result.residual_norms.begin(), result.residual_norms.end(),
                    [](double r) { return !(r < kReportedResidual); })) {
        throw NoConvergence("eigenpair residual above 1e-8", result.residual_norms);
    }
    return result;
}

} // namespace zetadyn
