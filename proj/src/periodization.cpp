#include "periodization.hpp"

#include "transpec/errors.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <cmath>

namespace transpec::detail {

namespace {

double grid_point(std::size_t j, std::size_t n_grid) {
    return static_cast<double>(j) / static_cast<double>(n_grid);
}

bool is_integer(double d) { return std::abs(d - std::round(d)) < 1e-9; }

}  // namespace

ShellSpectrum::ShellSpectrum(const LineFunction& f, std::size_t n_grid, long n_terms)
    : f_(&f), n_grid_(n_grid), n_terms_(n_terms) {
    const auto* pc = std::get_if<PiecewiseConstant>(&f);
    if (pc == nullptr) return;
    for (const auto& jump : pc->jumps()) {
        jump_sizes_.push_back(jump.size);
        std::vector<cplx> gp(n_grid);
        for (std::size_t j = 0; j < n_grid; ++j) gp[j] = std::polar(1.0, -kTwoPi * grid_point(j, n_grid) * jump.position);
        std::vector<cplx> sp(static_cast<std::size_t>(2 * n_terms + 1));
        for (long n = -n_terms; n <= n_terms; ++n)
            sp[static_cast<std::size_t>(n + n_terms)] = std::polar(1.0, -kTwoPi * static_cast<double>(n) * jump.position);
        grid_phase_.push_back(std::move(gp));
        shell_phase_.push_back(std::move(sp));
    }
}

cplx ShellSpectrum::operator()(std::size_t j, long n) const {
    const double xi = static_cast<double>(n) + grid_point(j, n_grid_);
    if (const auto* pc = std::get_if<PiecewiseConstant>(f_)) {
        if (std::abs(xi) < 1.0) return fourier_transform(*pc, xi);
        cplx a{};
        const auto shell = static_cast<std::size_t>(n + n_terms_);
        for (std::size_t b = 0; b < jump_sizes_.size(); ++b) a += jump_sizes_[b] * grid_phase_[b][j] * shell_phase_[b][shell];
        return a / cplx(0.0, kTwoPi * xi);
    }
    if (const auto* bl = std::get_if<BandLimited>(f_)) return bl->spectrum(xi);
    const double t[1] = {xi};
    return fourier_transform(*f_, t)[0];
}

cplx lattice_tail(const LineFunction& f, const LineFunction& g, double t, long n_terms) {
    const auto* pf = std::get_if<PiecewiseConstant>(&f);
    const auto* pg = std::get_if<PiecewiseConstant>(&g);
    if (pf == nullptr || pg == nullptr) return 0.0;
    cplx weight{};
    for (const auto& a : pf->jumps())
        for (const auto& b : pg->jumps()) {
            const double d = a.position - b.position;
            if (is_integer(d)) weight += std::conj(a.size) * b.size * std::polar(1.0, kTwoPi * t * std::round(d));
        }
    if (weight == cplx{}) return 0.0;
    // sum_{|n| > N} 1/(t+n)^2 = trigamma(N+1+t) + trigamma(N+1-t)
    const double n1 = static_cast<double>(n_terms) + 1.0;
    const double shells = boost::math::trigamma(n1 + t) + boost::math::trigamma(n1 - t);
    return weight * shells / (4.0 * kPi * kPi);
}

void require_band_inside_shells(const LineFunction& f, long n_terms) {
    if (const auto* bl = std::get_if<BandLimited>(&f)) {
        if (bl->band_lo() < -static_cast<double>(n_terms) || bl->band_hi() > static_cast<double>(n_terms) + 1.0)
            throw DomainTooSmallError("band-limited spectrum extends beyond the requested lattice shells");
    }
}

std::vector<Eigen::MatrixXcd> periodized_cross_spectra(const std::vector<LineFunction>& family, std::size_t n_grid,
                                                       long n_terms, bool tail_correction) {
    if (n_grid == 0) throw ValidationError("n_grid must be positive");
    if (n_terms < 1) throw ValidationError("n_terms must be at least 1");
    const auto size = static_cast<Eigen::Index>(family.size());
    std::vector<ShellSpectrum> spectra;
    spectra.reserve(family.size());
    for (const auto& f : family) {
        require_band_inside_shells(f, n_terms);
        spectra.emplace_back(f, n_grid, n_terms);
    }

    std::vector<Eigen::MatrixXcd> out(n_grid, Eigen::MatrixXcd::Zero(size, size));
    std::vector<cplx> v(family.size());
    for (std::size_t j = 0; j < n_grid; ++j) {
        Eigen::MatrixXcd& m = out[j];
        for (long n = -n_terms; n <= n_terms; ++n) {
            for (Eigen::Index r = 0; r < size; ++r) v[static_cast<std::size_t>(r)] = spectra[static_cast<std::size_t>(r)](j, n);
            for (Eigen::Index r = 0; r < size; ++r)
                for (Eigen::Index s = r; s < size; ++s)
                    m(r, s) += std::conj(v[static_cast<std::size_t>(r)]) * v[static_cast<std::size_t>(s)];
        }
        if (tail_correction) {
            const double t = grid_point(j, n_grid);
            for (Eigen::Index r = 0; r < size; ++r)
                for (Eigen::Index s = r; s < size; ++s)
                    m(r, s) += lattice_tail(family[static_cast<std::size_t>(r)], family[static_cast<std::size_t>(s)], t, n_terms);
        }
        for (Eigen::Index r = 0; r < size; ++r) {
            m(r, r) = cplx(m(r, r).real(), 0.0);
            for (Eigen::Index s = r + 1; s < size; ++s) m(s, r) = std::conj(m(r, s));
        }
    }
    return out;
}

}  // namespace transpec::detail
