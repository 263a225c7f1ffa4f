#pragma once

// Gaussian processes attached to a translate system: stationary sequences with a given
// covariance, Brownian and mu-Gaussian processes on [0,1], stochastic integrals, and the
// deterministic kernel p_psi(s,t) = sum_n conj(psi^(s+n)) psi^(t+n).

#include "transpec/core_functions.hpp"
#include "transpec/renorm_dependence.hpp"
#include "transpec/spectral_density.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace transpec {

/// r_0..r_K with r_{-k} = conj(r_k); zero beyond K.
class CovarianceSequence {
public:
    explicit CovarianceSequence(std::vector<cplx> values);

    /// Takes the k >= 0 half of a Hermitian sequence.
    static CovarianceSequence from_coefficients(const CoefficientSequence& c);

    std::size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }
    cplx operator()(long k) const;

    /// T_{jk} = r_{k-j}, the n x n section.
    Eigen::MatrixXcd toeplitz(std::size_t n) const;

private:
    std::vector<cplx> values_;
};

enum class ProcessKind { brownian, mu_gaussian, stationary, synthesized };

std::string_view to_string(ProcessKind kind);

struct PathEnsemble {
    std::vector<double> time_grid;
    /// One row per path.
    Eigen::MatrixXcd paths;
    std::uint64_t seed = 0;
    ProcessKind kind = ProcessKind::stationary;

    std::size_t n_paths() const { return static_cast<std::size_t>(paths.rows()); }
    std::size_t n_times() const { return time_grid.size(); }
};

/// Seed of the random stream used by path i.
std::uint64_t path_substream_seed(std::uint64_t seed, std::uint64_t path);

/// M draws of a centered Gaussian vector X on `time_grid` with E(conj(X_j) X_k) = covariance(j, k),
/// by eigen-factorization of the covariance. Throws NotPositiveSemidefiniteError when an
/// eigenvalue falls below -1e-10 (relative to the largest).
PathEnsemble gaussian_paths(const Eigen::MatrixXcd& covariance, std::vector<double> time_grid, std::size_t n_paths,
                            std::uint64_t seed, ProcessKind kind = ProcessKind::stationary);

/// M draws of (X_0..X_{n-1}) with E(conj(X_j) X_k) = r_{k-j}; time grid j/n.
/// Throws NotPositiveSemidefiniteError when the section has an eigenvalue below -1e-10 (relative).
PathEnsemble stationary_gaussian(const CovarianceSequence& r, std::size_t n, std::size_t n_paths, std::uint64_t seed);

/// X on t_i = i/(n_times - 1), X_0 = 0, independent N(0, dt) increments.
PathEnsemble brownian_paths(std::size_t n_times, std::size_t n_paths, std::uint64_t seed);

/// X on t_j = j/n_grid (j = 0..n_grid), X_0 = 0, independent increments of variance p[j]/n_grid.
/// With p == 1 this reproduces brownian_paths(n_grid + 1, ...) bit for bit.
PathEnsemble mu_gaussian_increments(const PeriodicDensity& mu_density, std::size_t n_paths, std::uint64_t seed);

/// X_A = sum of the increments over the cells of A, one value per path.
std::vector<cplx> set_indexed(const PathEnsemble& ensemble, const GridSet& a);

/// sum_j m(t_j) (X_{t_{j+1}} - X_{t_j}) per path; needs n_times = m.n_grid() + 1.
std::vector<cplx> stochastic_integral(const PeriodicGridFunction& m, const PathEnsemble& ensemble);

/// \int_0^1 |m|^2 p dx on the grid.
double mu_norm_squared(const PeriodicGridFunction& m, const PeriodicDensity& p);

/// m -> e_1 m
PeriodicGridFunction multiplication_unitary(const PeriodicGridFunction& m);

/// K(s_a, t_b) = sum_{|n| <= n_terms} conj(psi^(s_a + n)) psi^(t_b + n).
Eigen::MatrixXcd nongaussian_realization(const LineFunction& psi, std::span<const double> s_grid,
                                         std::span<const double> t_grid, long n_terms);

}  // namespace transpec
