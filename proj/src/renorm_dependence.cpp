#include "transpec/renorm_dependence.hpp"

#include "periodization.hpp"
#include "transpec/errors.hpp"

#include <algorithm>
#include <cmath>

namespace transpec {

GridSet::GridSet(std::vector<bool> mask) : mask_(std::move(mask)) {
    if (mask_.empty()) throw ValidationError("grid set: n_grid must be positive");
    count_ = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

GridSet GridSet::complement() const {
    std::vector<bool> m(mask_.size());
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = !mask_[j];
    return GridSet(std::move(m));
}

std::vector<Interval> GridSet::runs() const {
    std::vector<Interval> out;
    const double n = static_cast<double>(mask_.size());
    std::size_t j = 0;
    while (j < mask_.size()) {
        if (!mask_[j]) {
            ++j;
            continue;
        }
        std::size_t end = j;
        while (end < mask_.size() && mask_[end]) ++end;
        out.push_back({static_cast<double>(j) / n, static_cast<double>(end) / n});
        j = end;
    }
    return out;
}

GridSet essential_support(const PeriodicDensity& p, double tol) {
    if (!(tol > 0.0)) throw ValidationError("essential support: tol must be positive");
    std::vector<bool> m(p.n_grid());
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = p[j] > tol;
    return GridSet(std::move(m));
}

Renormalization renormalize(const LineFunction& psi, const PeriodicDensity& p, double tol, long n_terms) {
    if (!(norm_squared(psi) > 0.0)) throw ZeroFunctionError("renormalize: psi is zero");
    if (n_terms < 1) throw ValidationError("renormalize: n_terms must be at least 1");
    detail::require_band_inside_shells(psi, n_terms);
    GridSet support = essential_support(p, tol);

    const std::size_t n = p.n_grid();
    std::vector<double> xi(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        if (support.contains(j)) xi[j] = 1.0 / std::sqrt(p[j]);

    detail::ShellSpectrum spectrum(psi, n, n_terms);
    std::vector<cplx> values(static_cast<std::size_t>(2 * n_terms + 1) * n);
    std::size_t i = 0;
    for (long s = -n_terms; s <= n_terms; ++s)
        for (std::size_t j = 0; j < n; ++j) values[i++] = xi[j] == 0.0 ? cplx{} : spectrum(j, s) * xi[j];

    return {SampledLineFunction(-static_cast<double>(n_terms), 1.0 / static_cast<double>(n), std::move(values)),
            std::move(support), n_terms};
}

PeriodicDensity renormalized_density(const Renormalization& ren) {
    return periodize_abs2(ren.psi_ren_hat, ren.support.n_grid(), ren.n_terms);
}

std::optional<GridSet> detect_l2_dependence(const PeriodicDensity& p, double tol, double min_measure) {
    const std::size_t n = p.n_grid();
    if (min_measure < 0.0) min_measure = 2.0 / static_cast<double>(n);
    const auto min_cells = static_cast<std::size_t>(std::llround(min_measure * static_cast<double>(n)));
    std::vector<bool> zero = essential_support(p, tol).complement().mask();
    if (std::find(zero.begin(), zero.end(), false) == zero.end()) return GridSet(std::move(zero));

    // Runs on the circle no longer than min_cells are isolated zeros of p, not a set of positive measure.
    std::size_t start = 0;
    while (zero[start]) ++start;  // a cell outside the zero set, so no run wraps past it
    std::vector<bool> kept(n, false);
    std::size_t i = 0;
    while (i < n) {
        const std::size_t j = (start + i) % n;
        if (!zero[j]) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        while (i + len < n && zero[(start + i + len) % n]) ++len;
        if (len > min_cells)
            for (std::size_t r = 0; r < len; ++r) kept[(start + i + r) % n] = true;
        i += len;
    }
    GridSet e(std::move(kept));
    if (e.empty()) return std::nullopt;
    return e;
}

CoefficientSequence construct_dependence_coeffs(const GridSet& e, long k_max) {
    if (e.empty()) throw EmptySetError("dependence coefficients: the set is empty");
    if (k_max < 0) throw ValidationError("dependence coefficients: k_max must be nonnegative");
    const auto runs = e.runs();
    std::vector<cplx> c(static_cast<std::size_t>(2 * k_max + 1));
    for (long k = -k_max; k <= k_max; ++k) {
        cplx s{};
        for (const Interval& r : runs) s += interval_transform(r.lo, r.hi, -static_cast<double>(k));
        c[static_cast<std::size_t>(k + k_max)] = s;
    }
    return CoefficientSequence(-k_max, std::move(c));
}

PeriodicGridFunction coefficient_multiplier(const CoefficientSequence& c, std::size_t n_grid) {
    if (n_grid == 0) throw ValidationError("multiplier: n_grid must be positive");
    const auto n = static_cast<long>(n_grid);
    std::vector<cplx> m(n_grid);
    for (long j = 0; j < n; ++j) {
        cplx s{};
        for (long k = c.k_min(); k <= c.k_max(); ++k) {
            const long kj = ((k * j) % n + n) % n;
            s += c[k] * std::polar(1.0, -kTwoPi * static_cast<double>(kj) / static_cast<double>(n));
        }
        m[static_cast<std::size_t>(j)] = s;
    }
    return PeriodicGridFunction(std::move(m));
}

double multiplier_norm(const CoefficientSequence& c, const PeriodicDensity& p) {
    const PeriodicGridFunction m = coefficient_multiplier(c, p.n_grid());
    double s = 0.0;
    for (std::size_t j = 0; j < p.n_grid(); ++j) s += std::norm(m[j]) * p[j];
    return std::sqrt(s / static_cast<double>(p.n_grid()));
}

namespace {

double combination_norm(const PiecewiseConstant& psi, const CoefficientSequence& c) {
    std::vector<long> ks;
    for (long k = c.k_min(); k <= c.k_max(); ++k)
        if (c[k] != cplx{}) ks.push_back(k);
    if (ks.empty()) return 0.0;

    std::vector<double> pts;
    for (long k : ks)
        for (double b : psi.breakpoints()) pts.push_back(b + static_cast<double>(k));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), pts.end());

    double s = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        cplx v{};
        for (long k : ks) v += c[k] * psi(mid - static_cast<double>(k));
        s += std::norm(v) * (pts[i + 1] - pts[i]);
    }
    return std::sqrt(s);
}

double combination_norm(const BandLimited& psi, const CoefficientSequence& c, double window) {
    // Shannon sampling: h sum |f(m h)|^2 = ||f||^2 for h = 1 / (band width).
    const double h = 1.0 / (psi.band_hi() - psi.band_lo());
    const auto half = static_cast<long>(std::ceil(0.5 * window / h));
    double s = 0.0;
    for (long m = -half; m < half; ++m) {
        const double x = static_cast<double>(m) * h;
        cplx v{};
        for (long k = c.k_min(); k <= c.k_max(); ++k)
            if (c[k] != cplx{}) v += c[k] * psi(x - static_cast<double>(k));
        s += std::norm(v);
    }
    return std::sqrt(s * h);
}

}  // namespace

double verify_dependence(const LineFunction& psi, const CoefficientSequence& c, double window) {
    if (const auto* pc = std::get_if<PiecewiseConstant>(&psi)) return combination_norm(*pc, c);
    if (const auto* sf = std::get_if<SampledLineFunction>(&psi)) return combination_norm(as_piecewise(*sf), c);
    if (!(window > 0.0)) throw ValidationError("verify dependence: window must be positive");
    return combination_norm(std::get<BandLimited>(psi), c, window);
}

}  // namespace transpec
