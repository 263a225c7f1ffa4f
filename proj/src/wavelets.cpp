#include "transpec/wavelets.hpp"

#include "transpec/errors.hpp"

#include <cmath>

namespace transpec {

namespace {

void require_odd(int k) {
    if (k < 1 || k % 2 == 0) throw ValidationError("stretched Haar: k must be odd and positive, got " + std::to_string(k));
}

// sin(k x) / sin(x) for odd k
double dirichlet(int k, double x) {
    double s = 1.0;
    for (int m = 1; 2 * m < k; ++m) s += 2.0 * std::cos(2.0 * m * x);
    return s;
}

}  // namespace

HaarPair stretched_haar(int k) {
    require_odd(k);
    const double kd = k;
    const double h = 1.0 / kd;
    return {PiecewiseConstant({0.0, kd}, {h}), PiecewiseConstant({0.0, 0.5 * kd, kd}, {h, -h})};
}

double stretched_haar_density_at(int k, HaarComponent which, double t) {
    require_odd(k);
    const double k2 = static_cast<double>(k) * k;
    if (which == HaarComponent::father) {
        const double d = dirichlet(k, kPi * t);
        return d * d / k2;
    }
    // cos(k y) / cos(y) = sin(k pi/2) * sin(k u) / sin(u), u = pi/2 - y, k odd
    const double y = 0.5 * kPi * t;
    const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double s = std::sin(k * y);
    const double c = std::cos(k * y);
    const double ds = dirichlet(k, y);
    const double dc = sign * dirichlet(k, 0.5 * kPi - y);
    return (s * s * ds * ds + c * c * dc * dc) / k2;
}

PeriodicDensity stretched_haar_density(int k, HaarComponent which, std::size_t n_grid) {
    require_odd(k);
    if (n_grid == 0) throw ValidationError("n_grid must be positive");
    return PeriodicDensity::sample(n_grid, [&](double t) { return stretched_haar_density_at(k, which, t); });
}

double consistency_check(const PeriodicDensity& p_father, const PeriodicDensity& p_mother) {
    const std::size_t n = p_father.n_grid();
    if (p_mother.n_grid() != n) throw GridMismatchError("consistency check: father and mother grids differ");
    if (n % 2 != 0) throw GridMismatchError("consistency check: n_grid must be even");
    double defect = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double lhs = p_father[2 * i] + p_mother[2 * i];
        const double rhs = p_father[i] + p_father[i + n / 2];
        defect = std::max(defect, std::abs(lhs - rhs));
    }
    return defect;
}

DyadicFilter::DyadicFilter(std::vector<cplx> samples) : samples_(std::move(samples)) {
    if (samples_.empty() || samples_.size() % 2 != 0) throw ValidationError("dyadic filter: n_grid must be even and positive");
}

DyadicFilter DyadicFilter::haar(std::size_t n_grid) {
    return sample(n_grid, [](double t) { return 0.5 * (1.0 + std::polar(1.0, -kTwoPi * t)); });
}

QmfReport qmf_check(const DyadicFilter& m0) {
    const auto& m = m0.samples();
    const std::size_t half = m.size() / 2;
    QmfReport r;
    for (std::size_t j = 0; j < m.size(); ++j)
        r.max_defect = std::max(r.max_defect, std::abs(std::norm(m[j]) + std::norm(m[(j + half) % m.size()]) - 1.0));
    r.lowpass_defect = std::abs(std::abs(m[0]) - 1.0);
    return r;
}

PiecewiseConstant dyadic_atom(const PiecewiseConstant& mother, int j, long k) {
    const double scale = std::ldexp(1.0, -j);  // 2^{-j}
    const double height = std::pow(2.0, 0.5 * j);
    std::vector<double> b;
    std::vector<cplx> v;
    for (double x : mother.breakpoints()) b.push_back((x + static_cast<double>(k)) * scale);
    for (cplx y : mother.values()) v.push_back(height * y);
    return PiecewiseConstant(std::move(b), std::move(v));
}

std::vector<double> parseval_wavelet_check(const PiecewiseConstant& mother, const DyadicRange& range,
                                           const std::vector<LineFunction>& test_functions) {
    if (range.j_lo > range.j_hi || range.k_lo > range.k_hi) throw ValidationError("parseval check: empty range");
    std::vector<double> out;
    out.reserve(test_functions.size());
    for (const auto& f : test_functions) {
        const double nf = norm_squared(f);
        if (nf == 0.0) {
            out.push_back(0.0);
            continue;
        }
        double s = 0.0;
        for (int j = range.j_lo; j <= range.j_hi; ++j)
            for (long k = range.k_lo; k <= range.k_hi; ++k) s += std::norm(inner_product(LineFunction(dyadic_atom(mother, j, k)), f));
        out.push_back(s / nf);
    }
    return out;
}

}  // namespace transpec
