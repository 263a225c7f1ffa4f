#include "transpec/spectral_density.hpp"

#include "periodization.hpp"
#include "transpec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace transpec {

PeriodicDensity::PeriodicDensity(std::vector<double> values, double tail_bound)
    : values_(std::move(values)), tail_bound_(tail_bound) {
    if (values_.empty()) throw ValidationError("density: n_grid must be positive");
    if (!(tail_bound_ >= 0.0)) throw ValidationError("density: tail bound must be nonnegative");
    for (double& v : values_) {
        if (!std::isfinite(v)) throw ValidationError("density: non-finite sample");
        if (v < -1e-14) throw ValidationError("density: negative sample " + std::to_string(v));
        if (v < 0.0) v = 0.0;
    }
}

double PeriodicDensity::at(double x) const {
    const double n = static_cast<double>(values_.size());
    double u = std::round((x - std::floor(x)) * n);
    if (u >= n) u -= n;
    return values_[static_cast<std::size_t>(u)];
}

double PeriodicDensity::integral() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double PeriodicDensity::max() const { return *std::max_element(values_.begin(), values_.end()); }
double PeriodicDensity::min() const { return *std::min_element(values_.begin(), values_.end()); }

// ---------------------------------------------------------------------------

CoefficientSequence::CoefficientSequence(long k_min, std::vector<cplx> values) : k_min_(k_min), values_(std::move(values)) {}

cplx CoefficientSequence::operator[](long k) const {
    if (k < k_min_ || k > k_max()) return 0.0;
    return values_[static_cast<std::size_t>(k - k_min_)];
}

double CoefficientSequence::l2_norm() const {
    double s = 0.0;
    for (const cplx& c : values_) s += std::norm(c);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------

namespace {

template <class Fn>
PeriodicDensity periodize_with(Fn&& f, std::size_t n_grid, long n_terms) {
    if (n_grid == 0) throw ValidationError("n_grid must be positive");
    if (n_terms < 1) throw ValidationError("n_terms must be at least 1");
    std::vector<double> p(n_grid, 0.0);
    double last_shell = 0.0;
    for (std::size_t j = 0; j < n_grid; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(n_grid);
        double s = 0.0;
        for (long n = -n_terms; n <= n_terms; ++n) s += std::norm(f(x + static_cast<double>(n)));
        p[j] = s;
        last_shell = std::max({last_shell, std::norm(f(x + static_cast<double>(n_terms))),
                               std::norm(f(x - static_cast<double>(n_terms)))});
    }
    return PeriodicDensity(std::move(p), 2.0 * last_shell);
}

}  // namespace

PeriodicDensity periodize_abs2(const SampledLineFunction& f, std::size_t n_grid, long n_terms) {
    if (!f.covers(-static_cast<double>(n_terms), static_cast<double>(n_terms) + 1.0))
        throw DomainTooSmallError("periodize: sample window does not cover shells [-" + std::to_string(n_terms) + ", " +
                                  std::to_string(n_terms + 1) + ")");
    return periodize_with(f, n_grid, n_terms);
}

PeriodicDensity periodize_abs2(const LineFunction& f, std::size_t n_grid, long n_terms) {
    if (const auto* s = std::get_if<SampledLineFunction>(&f)) return periodize_abs2(*s, n_grid, n_terms);
    return periodize_with([&f](double x) { return evaluate(f, x); }, n_grid, n_terms);
}

PeriodicDensity spectral_density(const LineFunction& psi, const SpectralOptions& options) {
    if (!(norm_squared(psi) > 0.0)) throw ZeroFunctionError("spectral density of the zero function");
    const auto cross = detail::periodized_cross_spectra({psi}, options.n_grid, options.n_terms, options.tail_correction);

    detail::ShellSpectrum spectrum(psi, options.n_grid, options.n_terms);
    std::vector<double> p(options.n_grid);
    double last_shell = 0.0;
    for (std::size_t j = 0; j < options.n_grid; ++j) {
        p[j] = cross[j](0, 0).real();
        last_shell = std::max({last_shell, std::norm(spectrum(j, options.n_terms)), std::norm(spectrum(j, -options.n_terms))});
    }
    return PeriodicDensity(std::move(p), 2.0 * last_shell);
}

CoefficientSequence autocorrelation_coeffs(const LineFunction& psi, long k_max) {
    if (k_max < 0) throw ValidationError("k_max must be nonnegative");
    std::vector<cplx> v(static_cast<std::size_t>(2 * k_max + 1));
    for (long k = 0; k <= k_max; ++k) {
        const cplx c = inner_product(psi, translate(psi, k));
        v[static_cast<std::size_t>(k_max + k)] = k == 0 ? cplx(c.real(), 0.0) : c;
        v[static_cast<std::size_t>(k_max - k)] = k == 0 ? cplx(c.real(), 0.0) : std::conj(c);
    }
    return CoefficientSequence(-k_max, std::move(v));
}

CoefficientSequence density_fourier_coeffs(const PeriodicDensity& p, long k_max) {
    const auto n = static_cast<long>(p.n_grid());
    if (k_max < 0) throw ValidationError("k_max must be nonnegative");
    if (2 * k_max >= n)
        throw AliasingError("density Fourier coefficients: k_max = " + std::to_string(k_max) + " aliases on a grid of " +
                            std::to_string(n) + " points");
    std::vector<cplx> v(static_cast<std::size_t>(2 * k_max + 1));
    for (long k = -k_max; k <= k_max; ++k) {
        cplx s{};
        for (long j = 0; j < n; ++j) {
            const long kj = ((k * j) % n + n) % n;
            s += p[static_cast<std::size_t>(j)] * std::polar(1.0, -kTwoPi * static_cast<double>(kj) / static_cast<double>(n));
        }
        v[static_cast<std::size_t>(k + k_max)] = s / static_cast<double>(n);
    }
    return CoefficientSequence(-k_max, std::move(v));
}

ClosabilityReport closability_check(const PeriodicDensity& p, long k_max, double tol) {
    const CoefficientSequence c = density_fourier_coeffs(p, k_max);
    ClosabilityReport report;
    report.partial_sums.resize(static_cast<std::size_t>(k_max + 1));
    double s = std::norm(c[0]);
    report.partial_sums[0] = s;
    for (long k = 1; k <= k_max; ++k) {
        s += std::norm(c[k]) + std::norm(c[-k]);
        report.partial_sums[static_cast<std::size_t>(k)] = s;
    }
    double sq = 0.0;
    for (double v : p.values()) sq += v * v;
    report.l2_norm_squared = sq / static_cast<double>(p.n_grid());

    const double full = report.partial_sums.back();
    const double half = report.partial_sums[static_cast<std::size_t>(k_max / 2)];
    report.in_l2 = std::isfinite(report.l2_norm_squared) && std::abs(full - half) <= tol * full;
    return report;
}

}  // namespace transpec
