#pragma once

// Matrix-valued densities P_F(x) = PER(conj(f_r) f_s)(x) of a finite family and the
// quantities built from them.

#include "transpec/core_functions.hpp"
#include "transpec/renorm_dependence.hpp"
#include "transpec/spectral_density.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace transpec {

/// One N x N Hermitian positive-semidefinite matrix per grid point x_j = j / n_grid.
class MatrixDensityGrid {
public:
    /// Rejects non-Hermitian (entrywise 1e-12, relative to the trace) and indefinite
    /// (eigenvalue below -1e-10, same scaling) samples.
    explicit MatrixDensityGrid(std::vector<Eigen::MatrixXcd> matrices);

    std::size_t n_family() const { return static_cast<std::size_t>(matrices_.front().rows()); }
    std::size_t n_grid() const { return matrices_.size(); }
    const Eigen::MatrixXcd& operator[](std::size_t j) const { return matrices_[j]; }
    const std::vector<Eigen::MatrixXcd>& matrices() const { return matrices_; }

    /// The scalar density p_{f_r} on the diagonal.
    PeriodicDensity diagonal(std::size_t r) const;

private:
    std::vector<Eigen::MatrixXcd> matrices_;
};

enum class DensityDomain { time, frequency };

struct MatrixDensityOptions {
    std::size_t n_grid = 4096;
    long n_terms = 1000;
    DensityDomain domain = DensityDomain::frequency;
    /// Frequency side only; see SpectralOptions.
    bool tail_correction = true;
};

MatrixDensityGrid matrix_density(const std::vector<LineFunction>& family, const MatrixDensityOptions& options = {});

/// \int_0^1 P dx on the grid.
Eigen::MatrixXcd gram_integral(const MatrixDensityGrid& p);

/// <f_r | f_s> by direct inner products.
Eigen::MatrixXcd gram_matrix(const std::vector<LineFunction>& family);

struct OperatorInequalityReport {
    double max_violation = 0.0;  // max_x ||P(x) v||^2 - lambda <v | P(x) v>
    double lambda = 0.0;         // max_x ||P(x)||_{2,2}
};

OperatorInequalityReport operator_inequality_check(const MatrixDensityGrid& p, const Eigen::VectorXcd& v);

/// (\int_0^1 sum_{r,s} conj(m_r) P_{rs} m_s dx)^{1/2}
double weighted_norm(std::span<const PeriodicGridFunction> m, const MatrixDensityGrid& p);

struct CyclicDecomposition {
    /// Number of eigenvalues of P(x_j) above rel_tol * trace P(x_j).
    std::vector<int> multiplicity;
    /// supports[i] = {x_j : multiplicity >= i + 1}, i = 0..N-1; nested decreasing.
    std::vector<GridSet> supports;
};

CyclicDecomposition cyclic_decomposition(const MatrixDensityGrid& p, double rel_tol = 1e-6);

}  // namespace transpec
