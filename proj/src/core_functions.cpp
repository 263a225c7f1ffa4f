#include "transpec/core_functions.hpp"

#include "transpec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace transpec {

double sinc(double u) {
    if (std::abs(u) < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
    }
    return std::sin(u) / u;
}

cplx interval_transform(double a, double b, double t) {
    // \int_a^b e^{-2 pi i t x} dx = (b - a) e^{-i pi t (a + b)} sinc(pi t (b - a))
    return (b - a) * sinc(kPi * t * (b - a)) * std::polar(1.0, -kPi * t * (a + b));
}

// ---------------------------------------------------------------------------

PiecewiseConstant::PiecewiseConstant(std::vector<double> breakpoints, std::vector<cplx> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2) throw ValidationError("piecewise-constant function needs at least 2 breakpoints");
    if (values_.size() + 1 != breakpoints_.size())
        throw ValidationError("piecewise-constant function: expected " + std::to_string(breakpoints_.size() - 1) +
                              " values, got " + std::to_string(values_.size()));
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i])) throw ValidationError("piecewise-constant function: non-finite breakpoint");
        if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
            throw ValidationError("piecewise-constant function: breakpoints must be strictly increasing");
    }
    for (const cplx& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("piecewise-constant function: non-finite value");
}

PiecewiseConstant PiecewiseConstant::indicator(double a, double b, cplx height) {
    return PiecewiseConstant({a, b}, {height});
}

cplx PiecewiseConstant::operator()(double x) const {
    if (x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double PiecewiseConstant::norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += std::norm(values_[i]) * (breakpoints_[i + 1] - breakpoints_[i]);
    return s;
}

std::vector<PiecewiseConstant::Jump> PiecewiseConstant::jumps() const {
    std::vector<Jump> out;
    out.reserve(breakpoints_.size());
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const cplx right = i < values_.size() ? values_[i] : cplx{};
        const cplx left = i > 0 ? values_[i - 1] : cplx{};
        const cplx jump = right - left;
        if (jump != cplx{}) out.push_back({breakpoints_[i], jump});
    }
    return out;
}

PiecewiseConstant PiecewiseConstant::shifted(double dx) const {
    std::vector<double> b(breakpoints_);
    for (double& x : b) x += dx;
    return PiecewiseConstant(std::move(b), values_);
}

// ---------------------------------------------------------------------------

SampledLineFunction::SampledLineFunction(double window_start, double step, std::vector<cplx> values)
    : window_start_(window_start), step_(step), values_(std::move(values)) {
    if (!(step_ > 0.0) || !std::isfinite(step_)) throw ValidationError("sampled function: step must be positive");
    if (!std::isfinite(window_start_)) throw ValidationError("sampled function: non-finite window start");
}

cplx SampledLineFunction::operator()(double x) const {
    const double u = (x - window_start_) / step_;
    // snap onto a sample when x sits on the lattice up to rounding
    const double r = std::round(u);
    const double idx = std::abs(u - r) < 1e-9 ? r : std::floor(u);
    if (idx < 0.0 || idx >= static_cast<double>(values_.size())) return 0.0;
    return values_[static_cast<std::size_t>(idx)];
}

bool SampledLineFunction::covers(double lo, double hi) const {
    const double slack = 1e-9 * step_;
    return lo >= window_start_ - slack && hi <= window_end() + slack;
}

double SampledLineFunction::norm_squared() const {
    double s = 0.0;
    for (const cplx& v : values_) s += std::norm(v);
    return s * step_;
}

SampledLineFunction SampledLineFunction::shifted(double dx) const {
    return SampledLineFunction(window_start_ + dx, step_, values_);
}

// ---------------------------------------------------------------------------

BandLimited::BandLimited(std::vector<Interval> band, double shift) : band_(std::move(band)), shift_(shift) {
    if (band_.empty()) throw ValidationError("band-limited function: empty band");
    std::sort(band_.begin(), band_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < band_.size(); ++i) {
        if (!(band_[i].hi > band_[i].lo) || !std::isfinite(band_[i].lo) || !std::isfinite(band_[i].hi))
            throw ValidationError("band-limited function: each band interval needs lo < hi");
        if (i > 0 && band_[i].lo < band_[i - 1].hi) throw ValidationError("band-limited function: band intervals overlap");
    }
}

double BandLimited::band_lo() const { return band_.front().lo; }
double BandLimited::band_hi() const { return band_.back().hi; }

cplx BandLimited::spectrum(double t) const {
    for (const Interval& iv : band_)
        if (iv.contains(t)) return std::polar(1.0, -kTwoPi * t * shift_);
    return 0.0;
}

cplx BandLimited::operator()(double x) const {
    cplx s{};
    for (const Interval& iv : band_) s += interval_transform(iv.lo, iv.hi, -(x - shift_));
    return s;
}

double BandLimited::norm_squared() const {
    double s = 0.0;
    for (const Interval& iv : band_) s += iv.length();
    return s;
}

// ---------------------------------------------------------------------------

PeriodicGridFunction::PeriodicGridFunction(std::vector<cplx> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("periodic grid function: n_grid must be positive");
}

PeriodicGridFunction PeriodicGridFunction::exponential(long k, std::size_t n_grid) {
    std::vector<cplx> v(n_grid);
    for (std::size_t j = 0; j < n_grid; ++j) {
        // reduce k j mod n_grid first so large k stays exact
        const long long kj = (static_cast<long long>(k) * static_cast<long long>(j)) % static_cast<long long>(n_grid);
        v[j] = std::polar(1.0, kTwoPi * static_cast<double>(kj) / static_cast<double>(n_grid));
    }
    return PeriodicGridFunction(std::move(v));
}

// ---------------------------------------------------------------------------

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

cplx inner_piecewise(const PiecewiseConstant& f, const PiecewiseConstant& g) {
    const double lo = std::max(f.support_lo(), g.support_lo());
    const double hi = std::min(f.support_hi(), g.support_hi());
    if (!(hi > lo)) return 0.0;
    std::vector<double> pts;
    pts.reserve(f.breakpoints().size() + g.breakpoints().size());
    for (double b : f.breakpoints())
        if (b >= lo && b <= hi) pts.push_back(b);
    for (double b : g.breakpoints())
        if (b >= lo && b <= hi) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    cplx s{};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += std::conj(f(pts[i])) * g(pts[i]) * (pts[i + 1] - pts[i]);
    return s;
}

cplx inner_sampled(const SampledLineFunction& f, const SampledLineFunction& g) {
    const double h = f.step();
    if (std::abs(g.step() - h) > 1e-12 * h) throw GridMismatchError("inner product: sampled functions have different steps");
    const double u = (g.window_start() - f.window_start()) / h;
    const double r = std::round(u);
    if (std::abs(u - r) > 1e-9) throw GridMismatchError("inner product: sampled grids are not aligned");
    const long offset = static_cast<long>(r);  // g sample i sits at f sample i + offset
    const long nf = static_cast<long>(f.size());
    const long ng = static_cast<long>(g.size());
    const long lo = std::max(0L, offset);
    const long hi = std::min(nf, ng + offset);
    cplx s{};
    for (long i = lo; i < hi; ++i) s += std::conj(f.values()[static_cast<std::size_t>(i)]) * g.values()[static_cast<std::size_t>(i - offset)];
    return s * h;
}

cplx inner_band(const BandLimited& f, const BandLimited& g) {
    // \int_{S_f cap S_g} e^{2 pi i t (shift_f - shift_g)} dt
    const double d = f.shift() - g.shift();
    cplx s{};
    for (const Interval& a : f.band())
        for (const Interval& b : g.band()) {
            const double lo = std::max(a.lo, b.lo);
            const double hi = std::min(a.hi, b.hi);
            if (hi > lo) s += interval_transform(lo, hi, -d);
        }
    return s;
}

}  // namespace

PiecewiseConstant as_piecewise(const SampledLineFunction& f) {
    if (f.size() == 0) return PiecewiseConstant({f.window_start(), f.window_start() + f.step()}, {0.0});
    std::vector<double> b(f.size() + 1);
    for (std::size_t j = 0; j <= f.size(); ++j) b[j] = f.window_start() + f.step() * static_cast<double>(j);
    return PiecewiseConstant(std::move(b), std::vector<cplx>(f.values().begin(), f.values().end()));
}

cplx evaluate(const LineFunction& f, double x) {
    return std::visit([x](const auto& g) { return cplx(g(x)); }, f);
}

double norm_squared(const LineFunction& f) {
    return std::visit([](const auto& g) { return g.norm_squared(); }, f);
}

cplx inner_product(const LineFunction& f, const LineFunction& g) {
    return std::visit(
        Overloaded{
            [](const PiecewiseConstant& a, const PiecewiseConstant& b) { return inner_piecewise(a, b); },
            [](const PiecewiseConstant& a, const SampledLineFunction& b) { return inner_piecewise(a, as_piecewise(b)); },
            [](const SampledLineFunction& a, const PiecewiseConstant& b) { return inner_piecewise(as_piecewise(a), b); },
            [](const SampledLineFunction& a, const SampledLineFunction& b) { return inner_sampled(a, b); },
            [](const BandLimited& a, const BandLimited& b) { return inner_band(a, b); },
            [](const auto&, const auto&) -> cplx {
                throw GridMismatchError("inner product: band-limited functions pair only with band-limited functions");
            },
        },
        f, g);
}

LineFunction translate(const LineFunction& f, long k) {
    const double dx = static_cast<double>(k);
    return std::visit([dx](const auto& g) -> LineFunction { return g.shifted(dx); }, f);
}

cplx fourier_transform(const PiecewiseConstant& f, double t) {
    cplx s{};
    const auto b = f.breakpoints();
    const auto v = f.values();
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * interval_transform(b[i], b[i + 1], t);
    return s;
}

std::vector<cplx> fourier_transform(const LineFunction& f, std::span<const double> t) {
    std::vector<cplx> out(t.size());
    std::visit(Overloaded{
                   [&](const PiecewiseConstant& g) {
                       for (std::size_t i = 0; i < t.size(); ++i) out[i] = fourier_transform(g, t[i]);
                   },
                   [&](const SampledLineFunction& g) {
                       for (std::size_t i = 0; i < t.size(); ++i) {
                           cplx s{};
                           for (std::size_t j = 0; j < g.size(); ++j) {
                               const double a = g.window_start() + g.step() * static_cast<double>(j);
                               s += g.values()[j] * interval_transform(a, a + g.step(), t[i]);
                           }
                           out[i] = s;
                       }
                   },
                   [&](const BandLimited& g) {
                       for (std::size_t i = 0; i < t.size(); ++i) out[i] = g.spectrum(t[i]);
                   },
               },
               f);
    return out;
}

SampledLineFunction fourier_transform(const LineFunction& f, double start, double step, std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t j = 0; j < count; ++j) t[j] = start + step * static_cast<double>(j);
    return SampledLineFunction(start, step, fourier_transform(f, t));
}

}  // namespace transpec
