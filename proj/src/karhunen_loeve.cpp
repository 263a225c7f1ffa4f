#include "transpec/karhunen_loeve.hpp"

#include "transpec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace transpec {

namespace {

double uniform_step(const std::vector<double>& grid) {
    if (grid.size() < 2) throw ValidationError("KL: the time grid needs at least two points");
    const double dt = grid[1] - grid[0];
    if (!(dt > 0.0)) throw ValidationError("KL: the time grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - grid[i - 1] - dt) > 1e-9 * std::max(1.0, dt * static_cast<double>(grid.size())))
            throw ValidationError("KL: the time grid must be uniform");
    return dt;
}

void require_same_grid(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw GridMismatchError("KL: ensemble and expansion grids differ in length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-12) throw GridMismatchError("KL: ensemble and expansion grids differ");
}

}  // namespace

Eigen::MatrixXcd brownian_kernel(const std::vector<double>& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXcd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) k(i, j) = std::min(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)]);
    return k;
}

KLExpansion kl_decompose(const Eigen::MatrixXcd& kernel, const std::vector<double>& grid) {
    const double dt = uniform_step(grid);
    const auto n = static_cast<Eigen::Index>(grid.size());
    if (kernel.rows() != n || kernel.cols() != n) throw ValidationError("KL: kernel size does not match the grid");
    const double scale = std::max(1.0, kernel.cwiseAbs().maxCoeff());
    const double asym = (kernel - kernel.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * scale) throw ValidationError("KL: kernel is not Hermitian (deviation " + std::to_string(asym) + ")");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kernel * dt);
    if (es.info() != Eigen::Success) throw ComputationError("KL: eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-8 * scale * dt * static_cast<double>(n))
        throw NotPositiveSemidefiniteError("KL: kernel is not positive semidefinite", ev.minCoeff());

    KLExpansion e;
    e.grid = grid;
    e.dt = dt;
    e.eigenvalues.resize(static_cast<std::size_t>(n));
    e.eigenfunctions.resize(n, n);
    const double norm = 1.0 / std::sqrt(dt);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;  // ascending -> descending
        e.eigenvalues[static_cast<std::size_t>(k)] = std::max(0.0, ev(src));
        e.eigenfunctions.col(k) = es.eigenvectors().col(src) * norm;
    }
    return e;
}

std::size_t nondegenerate_modes(const KLExpansion& expansion) {
    std::size_t k = 0;
    while (k < expansion.n_modes() && expansion.eigenvalues[k] > kDegenerateEigenvalue) ++k;
    return k;
}

Eigen::MatrixXcd kl_coefficients(const PathEnsemble& ensemble, const KLExpansion& expansion, std::size_t n_modes) {
    require_same_grid(ensemble.time_grid, expansion.grid);
    if (n_modes > expansion.n_modes()) throw ValidationError("KL: more modes requested than available");
    for (std::size_t k = 0; k < n_modes; ++k)
        if (!(expansion.eigenvalues[k] > kDegenerateEigenvalue))
            throw DegenerateModeError("KL: mode " + std::to_string(k) + " has eigenvalue " +
                                      std::to_string(expansion.eigenvalues[k]));
    const auto m = static_cast<Eigen::Index>(n_modes);
    Eigen::MatrixXcd z = expansion.dt * (ensemble.paths * expansion.eigenfunctions.leftCols(m).conjugate());
    for (Eigen::Index k = 0; k < m; ++k) z.col(k) /= std::sqrt(expansion.eigenvalues[static_cast<std::size_t>(k)]);
    return z;
}

PathEnsemble kl_reconstruct(const KLExpansion& expansion, const Eigen::MatrixXcd& z, std::size_t n_modes) {
    if (n_modes > static_cast<std::size_t>(z.cols()) || n_modes > expansion.n_modes())
        throw ValidationError("KL: more modes requested than available");
    const auto m = static_cast<Eigen::Index>(n_modes);
    Eigen::VectorXd root(m);
    for (Eigen::Index k = 0; k < m; ++k) root(k) = std::sqrt(expansion.eigenvalues[static_cast<std::size_t>(k)]);
    PathEnsemble out;
    out.time_grid = expansion.grid;
    out.kind = ProcessKind::synthesized;
    if (m == 0)
        out.paths = Eigen::MatrixXcd::Zero(z.rows(), static_cast<Eigen::Index>(expansion.grid.size()));
    else
        out.paths = z.leftCols(m) * root.asDiagonal() * expansion.eigenfunctions.leftCols(m).transpose();
    return out;
}

ReconstructionError reconstruction_error(const PathEnsemble& original, const PathEnsemble& approximation) {
    if (original.paths.rows() != approximation.paths.rows() || original.paths.cols() != approximation.paths.cols())
        throw GridMismatchError("reconstruction error: ensembles differ in shape");
    const Eigen::Index m = original.paths.rows();
    if (m == 0) throw ValidationError("reconstruction error: empty ensemble");
    const Eigen::VectorXd e = (original.paths - approximation.paths).rowwise().squaredNorm();
    const Eigen::VectorXd x = original.paths.rowwise().squaredNorm();
    ReconstructionError r;
    const double me = e.mean();
    const double mx = x.mean();
    if (mx == 0.0) return r;
    r.relative = me / mx;
    if (m > 1) {
        // ratio of means: residual d_i = e_i - R x_i
        const Eigen::VectorXd d = e - r.relative * x;
        const double var = d.squaredNorm() / static_cast<double>(m - 1);
        r.standard_error = std::sqrt(var / static_cast<double>(m)) / mx;
    }
    return r;
}

double kl_tail_fraction(const KLExpansion& expansion, std::size_t n_modes) {
    double total = 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < expansion.n_modes(); ++k) {
        total += expansion.eigenvalues[k];
        if (k >= n_modes) tail += expansion.eigenvalues[k];
    }
    return total > 0.0 ? tail / total : 0.0;
}

double projection_error(const PathEnsemble& ensemble, const Eigen::MatrixXcd& basis, std::size_t n_modes, double dt) {
    if (basis.rows() != static_cast<Eigen::Index>(ensemble.n_times()))
        throw GridMismatchError("projection error: basis length differs from the time grid");
    const auto m = static_cast<Eigen::Index>(n_modes);
    const Eigen::MatrixXcd b = basis.leftCols(m);
    const Eigen::MatrixXcd coeff = dt * (ensemble.paths * b.conjugate());
    const Eigen::MatrixXcd residual = ensemble.paths - coeff * b.transpose();
    const double energy = ensemble.paths.squaredNorm();
    return energy > 0.0 ? residual.squaredNorm() / energy : 0.0;
}

}  // namespace transpec
