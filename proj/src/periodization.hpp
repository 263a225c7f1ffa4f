#pragma once

// Shell sums over the frequency lattice shared by spectral_density, matrix_density and the
// two-variable kernel.

#include "transpec/core_functions.hpp"

#include <Eigen/Dense>

#include <vector>

namespace transpec::detail {

/// Evaluates f^(x_j + n) for x_j = j / n_grid and |n| <= n_terms.
///
/// Piecewise-constant inputs use psi^(xi) = sum_b J_b e^{-2 pi i xi b} / (2 pi i xi) with
/// tabulated phases; near xi = 0 the stable per-piece formula is used instead.
class ShellSpectrum {
public:
    ShellSpectrum(const LineFunction& f, std::size_t n_grid, long n_terms);

    cplx operator()(std::size_t j, long n) const;

    const LineFunction& function() const { return *f_; }

private:
    const LineFunction* f_;
    std::size_t n_grid_;
    long n_terms_;
    std::vector<cplx> jump_sizes_;
    // phase tables, indexed [jump][j] and [jump][n + n_terms]
    std::vector<std::vector<cplx>> grid_phase_;
    std::vector<std::vector<cplx>> shell_phase_;
};

/// Sum over |n| > n_terms of conj(f^(t+n)) g^(t+n) restricted to the jump pairs of f and g whose
/// separation is an integer; the other pairs oscillate in n and contribute O(1/n_terms^2).
/// Zero unless both are piecewise constant.
cplx lattice_tail(const LineFunction& f, const LineFunction& g, double t, long n_terms);

/// Throws DomainTooSmallError when a band-limited member has spectrum outside [-n_terms, n_terms + 1).
void require_band_inside_shells(const LineFunction& f, long n_terms);

/// P_{rs}(x_j) = sum_{|n| <= n_terms} conj(f_r^(x_j+n)) f_s^(x_j+n) (+ tail), one matrix per grid point.
std::vector<Eigen::MatrixXcd> periodized_cross_spectra(const std::vector<LineFunction>& family, std::size_t n_grid,
                                                       long n_terms, bool tail_correction);

}  // namespace transpec::detail
