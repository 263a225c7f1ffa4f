#include "transpec/matrix_density.hpp"

#include "periodization.hpp"
#include "transpec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace transpec {

namespace {

Eigen::VectorXd eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ComputationError("matrix density: eigendecomposition failed");
    return es.eigenvalues();
}

}  // namespace

MatrixDensityGrid::MatrixDensityGrid(std::vector<Eigen::MatrixXcd> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw ValidationError("matrix density: n_grid must be positive");
    const Eigen::Index n = matrices_.front().rows();
    if (n == 0) throw ValidationError("matrix density: empty family");
    for (std::size_t j = 0; j < matrices_.size(); ++j) {
        const Eigen::MatrixXcd& m = matrices_[j];
        if (m.rows() != n || m.cols() != n) throw ValidationError("matrix density: inconsistent matrix sizes");
        const double scale = std::max(1.0, m.trace().real());
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw ValidationError("matrix density: sample " + std::to_string(j) + " is not Hermitian");
        const double lo = eigenvalues(m).minCoeff();
        if (lo < -1e-10 * scale)
            throw NotPositiveSemidefiniteError("matrix density: sample " + std::to_string(j) + " is indefinite", lo);
    }
}

PeriodicDensity MatrixDensityGrid::diagonal(std::size_t r) const {
    std::vector<double> v(n_grid());
    const auto i = static_cast<Eigen::Index>(r);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = matrices_[j](i, i).real();
    return PeriodicDensity(std::move(v));
}

MatrixDensityGrid matrix_density(const std::vector<LineFunction>& family, const MatrixDensityOptions& options) {
    if (family.empty()) throw ValidationError("matrix density: empty family");
    for (std::size_t r = 0; r < family.size(); ++r)
        if (!(norm_squared(family[r]) > 0.0))
            throw ZeroFunctionError("matrix density: family member " + std::to_string(r) + " is zero");

    if (options.domain == DensityDomain::frequency)
        return MatrixDensityGrid(
            detail::periodized_cross_spectra(family, options.n_grid, options.n_terms, options.tail_correction));

    if (options.n_grid == 0) throw ValidationError("n_grid must be positive");
    if (options.n_terms < 1) throw ValidationError("n_terms must be at least 1");
    const auto size = static_cast<Eigen::Index>(family.size());
    std::vector<Eigen::MatrixXcd> out(options.n_grid, Eigen::MatrixXcd::Zero(size, size));
    Eigen::VectorXcd v(size);
    for (std::size_t j = 0; j < options.n_grid; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(options.n_grid);
        for (long n = -options.n_terms; n <= options.n_terms; ++n) {
            for (Eigen::Index r = 0; r < size; ++r) v(r) = evaluate(family[static_cast<std::size_t>(r)], x + static_cast<double>(n));
            if (v.squaredNorm() == 0.0) continue;
            out[j].noalias() += v.conjugate() * v.transpose();
        }
    }
    return MatrixDensityGrid(std::move(out));
}

Eigen::MatrixXcd gram_integral(const MatrixDensityGrid& p) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(p[0].rows(), p[0].cols());
    for (const auto& m : p.matrices()) s += m;
    return s / static_cast<double>(p.n_grid());
}

Eigen::MatrixXcd gram_matrix(const std::vector<LineFunction>& family) {
    const auto size = static_cast<Eigen::Index>(family.size());
    Eigen::MatrixXcd g(size, size);
    for (Eigen::Index r = 0; r < size; ++r)
        for (Eigen::Index s = r; s < size; ++s) {
            g(r, s) = inner_product(family[static_cast<std::size_t>(r)], family[static_cast<std::size_t>(s)]);
            g(s, r) = std::conj(g(r, s));
        }
    return g;
}

OperatorInequalityReport operator_inequality_check(const MatrixDensityGrid& p, const Eigen::VectorXcd& v) {
    if (v.size() != p[0].rows()) throw ValidationError("operator inequality check: vector length differs from family size");
    OperatorInequalityReport r;
    for (const auto& m : p.matrices()) r.lambda = std::max(r.lambda, eigenvalues(m).cwiseAbs().maxCoeff());
    r.max_violation = -std::numeric_limits<double>::infinity();
    for (const auto& m : p.matrices()) {
        const Eigen::VectorXcd pv = m * v;
        r.max_violation = std::max(r.max_violation, pv.squaredNorm() - r.lambda * v.dot(pv).real());
    }
    return r;
}

double weighted_norm(std::span<const PeriodicGridFunction> m, const MatrixDensityGrid& p) {
    if (m.size() != p.n_family()) throw GridMismatchError("weighted norm: need one multiplier per family member");
    for (const auto& c : m)
        if (c.n_grid() != p.n_grid()) throw GridMismatchError("weighted norm: multiplier grid differs from density grid");
    const auto size = static_cast<Eigen::Index>(m.size());
    Eigen::VectorXcd v(size);
    double s = 0.0;
    for (std::size_t j = 0; j < p.n_grid(); ++j) {
        for (Eigen::Index r = 0; r < size; ++r) v(r) = m[static_cast<std::size_t>(r)][j];
        s += v.dot(p[j] * v).real();
    }
    return std::sqrt(std::max(0.0, s / static_cast<double>(p.n_grid())));
}

CyclicDecomposition cyclic_decomposition(const MatrixDensityGrid& p, double rel_tol) {
    if (!(rel_tol > 0.0)) throw ValidationError("cyclic decomposition: tolerance must be positive");
    CyclicDecomposition d;
    d.multiplicity.resize(p.n_grid());
    for (std::size_t j = 0; j < p.n_grid(); ++j) {
        const double trace = p[j].trace().real();
        if (trace <= 0.0) continue;
        const Eigen::VectorXd ev = eigenvalues(p[j]);
        d.multiplicity[j] = static_cast<int>((ev.array() > rel_tol * trace).count());
    }
    for (std::size_t i = 1; i <= p.n_family(); ++i) {
        std::vector<bool> mask(p.n_grid());
        for (std::size_t j = 0; j < mask.size(); ++j) mask[j] = d.multiplicity[j] >= static_cast<int>(i);
        d.supports.emplace_back(std::move(mask));
    }
    return d;
}

}  // namespace transpec
