#pragma once

// Discrete Karhunen-Loeve expansion X_t = sum_k sqrt(lambda_k) Z_k phi_k(t) of a covariance
// kernel sampled on a uniform time grid, with rectangle-rule weight dt.

#include "transpec/stochastic.hpp"

#include <Eigen/Dense>

#include <vector>

namespace transpec {

struct KLExpansion {
    /// Nonincreasing, clamped at 0.
    std::vector<double> eigenvalues;
    /// Column k is phi_k on the grid; dt * Phi^* Phi = I.
    Eigen::MatrixXcd eigenfunctions;
    std::vector<double> grid;
    double dt = 0.0;

    std::size_t n_modes() const { return eigenvalues.size(); }
};

inline constexpr double kDegenerateEigenvalue = 1e-12;

/// K(s, t) = min(s, t)
Eigen::MatrixXcd brownian_kernel(const std::vector<double>& grid);

/// Solves (K dt) phi = lambda phi. Rejects kernels that are not Hermitian or have an
/// eigenvalue below -1e-8 (both relative to max |K|).
KLExpansion kl_decompose(const Eigen::MatrixXcd& kernel, const std::vector<double>& grid);

/// Number of leading modes with lambda > kDegenerateEigenvalue.
std::size_t nondegenerate_modes(const KLExpansion& expansion);

/// Z_{i,k} = dt sum_j X^{(i)}_{t_j} conj(phi_k(t_j)) / sqrt(lambda_k) for k < n_modes.
/// Throws DegenerateModeError if a requested lambda_k <= kDegenerateEigenvalue.
Eigen::MatrixXcd kl_coefficients(const PathEnsemble& ensemble, const KLExpansion& expansion, std::size_t n_modes);

/// X_t = sum_{k < n_modes} sqrt(lambda_k) Z_k phi_k(t)
PathEnsemble kl_reconstruct(const KLExpansion& expansion, const Eigen::MatrixXcd& z, std::size_t n_modes);

struct ReconstructionError {
    /// sum_i ||X_i - Y_i||^2 / sum_i ||X_i||^2
    double relative = 0.0;
    /// Delta-method standard error of `relative` over the paths.
    double standard_error = 0.0;
};

ReconstructionError reconstruction_error(const PathEnsemble& original, const PathEnsemble& approximation);

/// (sum_{k >= n_modes} lambda_k) / (sum_k lambda_k)
double kl_tail_fraction(const KLExpansion& expansion, std::size_t n_modes);

/// Mean-square error of projecting every path onto the first n_modes columns of `basis`
/// (dt-orthonormal), relative to the mean-square path energy.
double projection_error(const PathEnsemble& ensemble, const Eigen::MatrixXcd& basis, std::size_t n_modes, double dt);

}  // namespace transpec
