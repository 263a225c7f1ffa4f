#pragma once

// Renormalization psi_REN = xi(T) psi with xi = chi_A p^{-1/2}, and L^2-dependencies
// sum_k c_k psi(. - k) = 0 supported on the zero set of p.

#include "transpec/core_functions.hpp"
#include "transpec/spectral_density.hpp"

#include <optional>
#include <vector>

namespace transpec {

/// A union of grid cells [j/n, (j+1)/n) in [0,1).
class GridSet {
public:
    explicit GridSet(std::vector<bool> mask);

    std::size_t n_grid() const { return mask_.size(); }
    const std::vector<bool>& mask() const { return mask_; }
    bool contains(std::size_t j) const { return mask_[j]; }
    std::size_t count() const { return count_; }
    double measure() const { return static_cast<double>(count_) / static_cast<double>(mask_.size()); }
    bool empty() const { return count_ == 0; }

    GridSet complement() const;
    /// Maximal runs of cells as half-open intervals, in increasing order.
    std::vector<Interval> runs() const;

private:
    std::vector<bool> mask_;
    std::size_t count_;
};

inline constexpr double kDefaultSupportTol = 1e-6;

/// {j : p[j] > tol}
GridSet essential_support(const PeriodicDensity& p, double tol = kDefaultSupportTol);

struct Renormalization {
    /// psi_REN^ sampled on [-n_terms, n_terms + 1) with step 1/n_grid.
    SampledLineFunction psi_ren_hat;
    GridSet support;
    long n_terms;
};

/// psi_REN^(t) = psi^(t) xi(t mod 1), xi = 0 off the support.
Renormalization renormalize(const LineFunction& psi, const PeriodicDensity& p, double tol = kDefaultSupportTol,
                            long n_terms = 256);

/// Density of the renormalized generator on the grid of p.
PeriodicDensity renormalized_density(const Renormalization& ren);

/// The zero set of p with isolated zeros removed: runs of zero cells (on the circle) no longer
/// than min_measure (default: two grid cells) are dropped. None when nothing remains.
std::optional<GridSet> detect_l2_dependence(const PeriodicDensity& p, double tol = kDefaultSupportTol,
                                            double min_measure = -1.0);

/// c_k = \int_E e^{2 pi i k t} dt, |k| <= k_max, so that sum_k c_k psi(. - k) has transform
/// chi_E-partial-sum times psi^.
CoefficientSequence construct_dependence_coeffs(const GridSet& e, long k_max);

/// m_c(t) = sum_k c_k e^{-2 pi i k t}, the multiplier of sum_k c_k T^k.
PeriodicGridFunction coefficient_multiplier(const CoefficientSequence& c, std::size_t n_grid);

/// (\int_0^1 |m_c|^2 p dt)^{1/2}
double multiplier_norm(const CoefficientSequence& c, const PeriodicDensity& p);

/// ||sum_k c_k psi(. - k)|| computed on the time side. Exact for piecewise-constant and
/// sampled psi; band-limited psi uses Shannon sampling at the band's Nyquist step over
/// [-window/2, window/2).
double verify_dependence(const LineFunction& psi, const CoefficientSequence& c, double window = 65536.0);

}  // namespace transpec
