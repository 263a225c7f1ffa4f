#include "transpec/frame_classifier.hpp"

#include "transpec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>

namespace transpec {

namespace {

constexpr std::array<std::string_view, 6> kVerdictNames = {"ONB", "PARSEVAL", "RIESZ", "FRAME", "BESSEL", "NONE"};

}  // namespace

std::string_view to_string(Verdict v) { return kVerdictNames[static_cast<std::size_t>(v)]; }

std::optional<Verdict> parse_verdict(std::string_view name) {
    for (std::size_t i = 0; i < kVerdictNames.size(); ++i)
        if (kVerdictNames[i] == name) return static_cast<Verdict>(i);
    return std::nullopt;
}

bool satisfies(Verdict v, Verdict property) {
    if (v == property) return true;
    switch (v) {
    case Verdict::ONB:
        return property != Verdict::NONE;
    case Verdict::PARSEVAL:
    case Verdict::RIESZ:
        return property == Verdict::FRAME || property == Verdict::BESSEL;
    case Verdict::FRAME:
        return property == Verdict::BESSEL;
    default:
        return false;
    }
}

FrameReport classify(const PeriodicDensity& p, const ClassifyOptions& options) {
    const double tol = options.tol;
    if (!(tol > 0.0 && tol < 0.5)) throw ValidationError("classify: tol must lie in (0, 1/2)");
    const double support_tol = options.support_tol < 0.0 ? tol * tol : options.support_tol;
    if (p.max() <= 0.0) throw ZeroFunctionError("classify: density is identically zero");

    FrameReport r;
    r.tol = tol;
    r.support_tol = support_tol;
    r.upper_bound = p.max();

    std::size_t in_support = 0;
    double a = std::numeric_limits<double>::infinity();
    bool near_one = true;
    bool near_zero_or_one = true;
    for (double v : p.values()) {
        if (v > support_tol) {
            ++in_support;
            a = std::min(a, v);
        }
        near_one = near_one && std::abs(v - 1.0) <= tol;
        near_zero_or_one = near_zero_or_one && (std::abs(v) <= tol || std::abs(v - 1.0) <= tol);
    }
    r.lower_bound = in_support > 0 ? a : 0.0;
    r.support_mass = static_cast<double>(in_support) / static_cast<double>(p.n_grid());

    if (r.upper_bound > options.cap)
        r.verdict = Verdict::NONE;
    else if (near_one)
        r.verdict = Verdict::ONB;
    else if (near_zero_or_one && r.support_mass > 0.0)
        r.verdict = Verdict::PARSEVAL;
    else if (r.lower_bound >= tol)
        r.verdict = r.support_mass >= 1.0 - tol ? Verdict::RIESZ : Verdict::FRAME;
    else
        r.verdict = Verdict::BESSEL;
    return r;
}

Eigen::MatrixXcd gram_section(const LineFunction& psi, long k_max) {
    if (k_max < 0) throw ValidationError("gram section: k_max must be nonnegative");
    const long size = 2 * k_max + 1;
    // <psi_j | psi_k> = <psi | psi_{k-j}>
    std::vector<cplx> r(static_cast<std::size_t>(size));
    for (long d = 0; d < size; ++d) r[static_cast<std::size_t>(d)] = inner_product(psi, translate(psi, d));
    Eigen::MatrixXcd g(size, size);
    for (long j = 0; j < size; ++j)
        for (long k = 0; k < size; ++k) {
            const cplx v = r[static_cast<std::size_t>(std::abs(k - j))];
            g(j, k) = k >= j ? v : std::conj(v);
        }
    return g;
}

GramBounds gram_frame_bounds_oracle(const LineFunction& psi, long k_max) {
    if (k_max < 1) throw ValidationError("gram oracle: k_max must be at least 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_section(psi, k_max), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ComputationError("gram oracle: eigendecomposition failed");
    return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace transpec
