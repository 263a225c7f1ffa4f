#pragma once

// Periodized densities p_psi = PER |psi^|^2 on [0,1), their Fourier coefficients, and the
// autocorrelation sequence <psi | psi(. - k)>.

#include "transpec/core_functions.hpp"

#include <cstddef>
#include <vector>

namespace transpec {

/// Nonnegative samples p(j / n_grid) of a 1-periodic density.
class PeriodicDensity {
public:
    /// Values above -1e-14 are clamped to 0; anything more negative is rejected.
    explicit PeriodicDensity(std::vector<double> values, double tail_bound = 0.0);

    template <class Fn>
    static PeriodicDensity sample(std::size_t n_grid, Fn&& fn) {
        std::vector<double> v(n_grid);
        for (std::size_t j = 0; j < n_grid; ++j) v[j] = fn(static_cast<double>(j) / static_cast<double>(n_grid));
        return PeriodicDensity(std::move(v));
    }

    std::size_t n_grid() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(values_.size()); }
    double tail_bound() const { return tail_bound_; }

    /// Sample at the grid point nearest to x (x taken mod 1).
    double at(double x) const;

    /// Periodic trapezoid rule for \int_0^1 p dx (the mean of the samples).
    double integral() const;
    double max() const;
    double min() const;

private:
    std::vector<double> values_;
    double tail_bound_;
};

/// Values c_k for k_min <= k <= k_max.
class CoefficientSequence {
public:
    CoefficientSequence(long k_min, std::vector<cplx> values);

    long k_min() const { return k_min_; }
    long k_max() const { return k_min_ + static_cast<long>(values_.size()) - 1; }
    std::size_t size() const { return values_.size(); }
    const std::vector<cplx>& values() const { return values_; }

    /// c_k, or 0 outside the stored range.
    cplx operator[](long k) const;
    double l2_norm() const;

private:
    long k_min_;
    std::vector<cplx> values_;
};

struct SpectralOptions {
    std::size_t n_grid = 4096;
    long n_terms = 1000;
    /// Add the closed-form O(1/n_terms) tail of the lattice sum for piecewise-constant inputs.
    bool tail_correction = true;
};

/// values[j] = sum_{|n| <= n_terms} |f(j/n_grid + n)|^2 for frequency or time samples.
/// Throws DomainTooSmallError when the window misses part of [-n_terms, n_terms + 1).
PeriodicDensity periodize_abs2(const SampledLineFunction& f, std::size_t n_grid, long n_terms);

/// Same, for a function evaluated in the time domain (PER |psi|^2).
PeriodicDensity periodize_abs2(const LineFunction& f, std::size_t n_grid, long n_terms);

/// p_psi = PER |psi^|^2.
PeriodicDensity spectral_density(const LineFunction& psi, const SpectralOptions& options = {});

/// <psi | psi(. - k)> for |k| <= k_max.
CoefficientSequence autocorrelation_coeffs(const LineFunction& psi, long k_max);

/// p^(k) = (1/n) sum_j p_j e^{-2 pi i k j / n} for |k| <= k_max; requires k_max < n_grid / 2.
CoefficientSequence density_fourier_coeffs(const PeriodicDensity& p, long k_max);

struct ClosabilityReport {
    bool in_l2 = false;
    /// S_K = sum_{|k| <= K} |p^(k)|^2 for K = 0..k_max.
    std::vector<double> partial_sums;
    /// \int_0^1 p^2 dx on the grid.
    double l2_norm_squared = 0.0;
};

ClosabilityReport closability_check(const PeriodicDensity& p, long k_max, double tol = 1e-3);

}  // namespace transpec
