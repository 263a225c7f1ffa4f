#pragma once

// Functions on the line and on the circle [0,1).
//
// Fourier convention throughout the library:  f^(t) = \int e^{-2 pi i t x} f(x) dx.
// Translation (T^k f)(x) = f(x - k) therefore multiplies f^ by e^{-2 pi i k t}.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

namespace transpec {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Half-open interval [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x < hi; }
};

/// sin(u)/u, with the series used near u = 0.
double sinc(double u);

/// \int_a^b e^{-2 pi i t x} dx, stable for all t (no 0/0 at t = 0).
cplx interval_transform(double a, double b, double t);

/// Exact piecewise-constant function: values[i] on [breakpoints[i], breakpoints[i+1]), zero elsewhere.
class PiecewiseConstant {
public:
    struct Jump {
        double position;
        cplx size;  // f(position+) - f(position-)
    };

    PiecewiseConstant(std::vector<double> breakpoints, std::vector<cplx> values);

    static PiecewiseConstant indicator(double a, double b, cplx height = 1.0);

    std::span<const double> breakpoints() const { return breakpoints_; }
    std::span<const cplx> values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }
    double support_lo() const { return breakpoints_.front(); }
    double support_hi() const { return breakpoints_.back(); }

    cplx operator()(double x) const;

    /// sum_i |v_i|^2 (b_{i+1} - b_i), exact.
    double norm_squared() const;

    /// Jumps at every breakpoint, including the two ends of the support. Zero jumps are dropped.
    std::vector<Jump> jumps() const;

    PiecewiseConstant shifted(double dx) const;

private:
    std::vector<double> breakpoints_;
    std::vector<cplx> values_;
};

/// Uniform samples on a truncation window. Sample j is held constant on
/// [window_start + j h, window_start + (j+1) h); the function is zero outside the window.
class SampledLineFunction {
public:
    SampledLineFunction(double window_start, double step, std::vector<cplx> values);

    double window_start() const { return window_start_; }
    double step() const { return step_; }
    double window_end() const { return window_start_ + step_ * static_cast<double>(values_.size()); }
    std::span<const cplx> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    cplx operator()(double x) const;

    /// Does the window contain [lo, hi)?
    bool covers(double lo, double hi) const;

    double norm_squared() const;

    SampledLineFunction shifted(double dx) const;

private:
    double window_start_;
    double step_;
    std::vector<cplx> values_;
};

/// Band-limited generator given on the frequency side: f^(t) = e^{-2 pi i t shift} chi_S(t),
/// with S a finite union of disjoint half-open intervals. The time-domain values are
/// f(x) = \int_S e^{2 pi i t (x - shift)} dt. Integer translates only change `shift`.
class BandLimited {
public:
    explicit BandLimited(std::vector<Interval> band, double shift = 0.0);

    std::span<const Interval> band() const { return band_; }
    double shift() const { return shift_; }
    double band_lo() const;
    double band_hi() const;

    /// f^(t)
    cplx spectrum(double t) const;
    /// f(x)
    cplx operator()(double x) const;

    double norm_squared() const;

    BandLimited shifted(double dx) const { return BandLimited(band_, shift_ + dx); }

private:
    std::vector<Interval> band_;
    double shift_;
};

using LineFunction = std::variant<PiecewiseConstant, SampledLineFunction, BandLimited>;

/// Samples on the circle grid x_j = j / n_grid, j = 0..n_grid-1.
class PeriodicGridFunction {
public:
    explicit PeriodicGridFunction(std::vector<cplx> values);

    template <class Fn>
    static PeriodicGridFunction sample(std::size_t n_grid, Fn&& fn) {
        std::vector<cplx> v(n_grid);
        for (std::size_t j = 0; j < n_grid; ++j) v[j] = fn(static_cast<double>(j) / static_cast<double>(n_grid));
        return PeriodicGridFunction(std::move(v));
    }

    /// e_k(x) = e^{2 pi i k x} on the grid.
    static PeriodicGridFunction exponential(long k, std::size_t n_grid);

    std::size_t n_grid() const { return values_.size(); }
    std::span<const cplx> values() const { return values_; }
    cplx operator[](std::size_t j) const { return values_[j]; }
    double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(values_.size()); }

private:
    std::vector<cplx> values_;
};

/// Time-domain value f(x).
cplx evaluate(const LineFunction& f, double x);

double norm_squared(const LineFunction& f);

/// <f|g> = \int conj(f) g, conjugate-linear in the first slot.
/// Exact for piecewise x piecewise (also piecewise x sampled) and band-limited x band-limited;
/// sampled x sampled requires equal steps and window starts an integer number of steps apart.
cplx inner_product(const LineFunction& f, const LineFunction& g);

/// (T^k f)(x) = f(x - k).
LineFunction translate(const LineFunction& f, long k);

/// Closed-form transform of one exact piecewise-constant function at a single frequency.
cplx fourier_transform(const PiecewiseConstant& f, double t);

/// f^(t) for every t. Sampled functions are transformed exactly as zero-order-hold functions.
std::vector<cplx> fourier_transform(const LineFunction& f, std::span<const double> t);

/// f^ on the uniform frequency grid start + j step, j < count.
SampledLineFunction fourier_transform(const LineFunction& f, double start, double step, std::size_t count);

/// A sampled function as an exact piecewise-constant one (one piece per sample).
PiecewiseConstant as_piecewise(const SampledLineFunction& f);

}  // namespace transpec
