#pragma once

// Dyadic wavelet pieces: low-pass filters, stretched Haar pairs and their densities,
// and the father/mother density relation.

#include "transpec/core_functions.hpp"
#include "transpec/spectral_density.hpp"

#include <vector>

namespace transpec {

struct HaarPair {
    PiecewiseConstant father;
    PiecewiseConstant mother;
};

enum class HaarComponent { father, mother };

/// phi_k = (1/k) phi(x/k), psi_k = (1/k) psi(x/k) for odd k >= 1.
HaarPair stretched_haar(int k);

/// Closed forms
///   p_{phi_k}(t) = (1/k^2) (sin(pi k t) / sin(pi t))^2
///   p_{psi_k}(t) = (1/k^2) (sin^4(pi k t/2) / sin^2(pi t/2) + cos^4(pi k t/2) / cos^2(pi t/2)).
/// The quotients are evaluated as Dirichlet kernels, so there are no removable singularities.
double stretched_haar_density_at(int k, HaarComponent which, double t);

PeriodicDensity stretched_haar_density(int k, HaarComponent which, std::size_t n_grid);

/// max over even grid indices of |p_phi(t) + p_psi(t) - p_phi(t/2) - p_phi((t+1)/2)|.
double consistency_check(const PeriodicDensity& p_father, const PeriodicDensity& p_mother);

/// Samples of m0 on [0,1); n_grid even.
class DyadicFilter {
public:
    explicit DyadicFilter(std::vector<cplx> samples);

    template <class Fn>
    static DyadicFilter sample(std::size_t n_grid, Fn&& fn) {
        std::vector<cplx> v(n_grid);
        for (std::size_t j = 0; j < n_grid; ++j) v[j] = fn(static_cast<double>(j) / static_cast<double>(n_grid));
        return DyadicFilter(std::move(v));
    }

    /// m0(t) = (1 + e^{-2 pi i t}) / 2
    static DyadicFilter haar(std::size_t n_grid);

    std::size_t n_grid() const { return samples_.size(); }
    const std::vector<cplx>& samples() const { return samples_; }

private:
    std::vector<cplx> samples_;
};

struct QmfReport {
    double max_defect = 0.0;      // max | |m0(t)|^2 + |m0(t + 1/2)|^2 - 1|
    double lowpass_defect = 0.0;  // ||m0(0)| - 1|
};

QmfReport qmf_check(const DyadicFilter& m0);

struct DyadicRange {
    int j_lo = -8;
    int j_hi = 8;
    long k_lo = -64;
    long k_hi = 64;
};

/// psi_{j,k}(x) = 2^{j/2} psi(2^j x - k)
PiecewiseConstant dyadic_atom(const PiecewiseConstant& mother, int j, long k);

/// For each f: sum over the range of |<psi_{j,k} | f>|^2 / ||f||^2 (0 for f = 0).
std::vector<double> parseval_wavelet_check(const PiecewiseConstant& mother, const DyadicRange& range,
                                           const std::vector<LineFunction>& test_functions);

}  // namespace transpec
