#include "transpec/stochastic.hpp"

#include "transpec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace transpec {

CovarianceSequence::CovarianceSequence(std::vector<cplx> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("covariance sequence: need at least r_0");
    if (std::abs(values_[0].imag()) > 1e-12 * std::max(1.0, std::abs(values_[0])))
        throw ValidationError("covariance sequence: r_0 must be real");
    values_[0] = values_[0].real();
}

CovarianceSequence CovarianceSequence::from_coefficients(const CoefficientSequence& c) {
    if (c.k_max() < 0) throw ValidationError("covariance sequence: coefficients have no k >= 0 part");
    std::vector<cplx> v;
    for (long k = 0; k <= c.k_max(); ++k) v.push_back(c[k]);
    return CovarianceSequence(std::move(v));
}

cplx CovarianceSequence::operator()(long k) const {
    const auto a = static_cast<std::size_t>(std::abs(k));
    if (a >= values_.size()) return 0.0;
    return k >= 0 ? values_[a] : std::conj(values_[a]);
}

Eigen::MatrixXcd CovarianceSequence::toeplitz(std::size_t n) const {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd t(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k) t(j, k) = (*this)(static_cast<long>(k - j));
    return t;
}

std::string_view to_string(ProcessKind kind) {
    switch (kind) {
    case ProcessKind::brownian:
        return "brownian";
    case ProcessKind::mu_gaussian:
        return "mu_gaussian";
    case ProcessKind::stationary:
        return "stationary";
    case ProcessKind::synthesized:
        return "synthesized";
    }
    return "unknown";
}

std::uint64_t path_substream_seed(std::uint64_t seed, std::uint64_t path) {
    // splitmix64 finalizer over (seed, path)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (path + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<double> uniform_grid(std::size_t n_points) {
    std::vector<double> t(n_points);
    const double d = static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) t[i] = static_cast<double>(i) / d;
    return t;
}

// X_0 = 0, X_{i+1} = X_i + sqrt(variances[i]) z
Eigen::MatrixXcd accumulate_increments(const std::vector<double>& variances, std::size_t n_paths, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(variances.size());
    std::vector<double> sd(variances.size());
    for (std::size_t i = 0; i < sd.size(); ++i) sd[i] = std::sqrt(variances[i]);
    Eigen::MatrixXcd paths = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n_paths), n + 1);
    for (std::size_t p = 0; p < n_paths; ++p) {
        std::mt19937_64 rng(path_substream_seed(seed, p));
        std::normal_distribution<double> normal;
        double x = 0.0;
        const auto row = static_cast<Eigen::Index>(p);
        for (Eigen::Index i = 0; i < n; ++i) {
            x += sd[static_cast<std::size_t>(i)] * normal(rng);
            paths(row, i + 1) = x;
        }
    }
    return paths;
}

}  // namespace

PathEnsemble gaussian_paths(const Eigen::MatrixXcd& covariance, std::vector<double> time_grid, std::size_t n_paths,
                            std::uint64_t seed, ProcessKind kind) {
    const Eigen::Index m = covariance.rows();
    if (m == 0 || covariance.cols() != m) throw ValidationError("gaussian paths: covariance must be square and nonempty");
    if (static_cast<Eigen::Index>(time_grid.size()) != m) throw ValidationError("gaussian paths: time grid length differs");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(covariance);
    if (es.info() != Eigen::Success) throw ComputationError("gaussian paths: eigendecomposition failed");
    const Eigen::VectorXd lambda = es.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    if (lambda.minCoeff() < -1e-10 * scale)
        throw NotPositiveSemidefiniteError("gaussian paths: covariance is not positive semidefinite", lambda.minCoeff());
    // Y = V Lambda^{1/2} W has E(Y Y^*) = C; X = conj(Y) then has E(conj(X_j) X_k) = C_{jk}.
    const Eigen::MatrixXcd factor =
        (es.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal()).conjugate();

    PathEnsemble e;
    e.time_grid = std::move(time_grid);
    e.paths.resize(static_cast<Eigen::Index>(n_paths), m);
    e.seed = seed;
    e.kind = kind;
    Eigen::VectorXcd w(m);
    for (std::size_t p = 0; p < n_paths; ++p) {
        std::mt19937_64 rng(path_substream_seed(seed, p));
        std::normal_distribution<double> normal;
        for (Eigen::Index i = 0; i < m; ++i) w(i) = normal(rng);
        e.paths.row(static_cast<Eigen::Index>(p)) = (factor * w).transpose();
    }
    return e;
}

PathEnsemble stationary_gaussian(const CovarianceSequence& r, std::size_t n, std::size_t n_paths, std::uint64_t seed) {
    if (n == 0) throw ValidationError("stationary gaussian: n must be positive");
    std::vector<double> grid(n);
    for (std::size_t j = 0; j < n; ++j) grid[j] = static_cast<double>(j) / static_cast<double>(n);
    return gaussian_paths(r.toeplitz(n), std::move(grid), n_paths, seed, ProcessKind::stationary);
}

PathEnsemble brownian_paths(std::size_t n_times, std::size_t n_paths, std::uint64_t seed) {
    if (n_times < 2) throw ValidationError("brownian paths: need at least two time points");
    const double dt = 1.0 / static_cast<double>(n_times - 1);
    PathEnsemble e;
    e.time_grid = uniform_grid(n_times);
    e.paths = accumulate_increments(std::vector<double>(n_times - 1, dt), n_paths, seed);
    e.seed = seed;
    e.kind = ProcessKind::brownian;
    return e;
}

PathEnsemble mu_gaussian_increments(const PeriodicDensity& mu_density, std::size_t n_paths, std::uint64_t seed) {
    const std::size_t n = mu_density.n_grid();
    std::vector<double> var(n);
    for (std::size_t j = 0; j < n; ++j) var[j] = mu_density[j] / static_cast<double>(n);
    PathEnsemble e;
    e.time_grid = uniform_grid(n + 1);
    e.paths = accumulate_increments(var, n_paths, seed);
    e.seed = seed;
    e.kind = ProcessKind::mu_gaussian;
    return e;
}

std::vector<cplx> set_indexed(const PathEnsemble& ensemble, const GridSet& a) {
    if (ensemble.n_times() != a.n_grid() + 1) throw GridMismatchError("set-indexed values: set grid differs from the time grid");
    std::vector<cplx> out(ensemble.n_paths());
    for (std::size_t p = 0; p < out.size(); ++p) {
        const auto row = ensemble.paths.row(static_cast<Eigen::Index>(p));
        cplx s{};
        for (std::size_t j = 0; j < a.n_grid(); ++j)
            if (a.contains(j)) s += row(static_cast<Eigen::Index>(j + 1)) - row(static_cast<Eigen::Index>(j));
        out[p] = s;
    }
    return out;
}

std::vector<cplx> stochastic_integral(const PeriodicGridFunction& m, const PathEnsemble& ensemble) {
    if (ensemble.n_times() != m.n_grid() + 1)
        throw GridMismatchError("stochastic integral: integrand grid does not match the path time grid");
    std::vector<cplx> out(ensemble.n_paths());
    for (std::size_t p = 0; p < out.size(); ++p) {
        const auto row = ensemble.paths.row(static_cast<Eigen::Index>(p));
        cplx s{};
        for (std::size_t j = 0; j < m.n_grid(); ++j)
            s += m[j] * (row(static_cast<Eigen::Index>(j + 1)) - row(static_cast<Eigen::Index>(j)));
        out[p] = s;
    }
    return out;
}

double mu_norm_squared(const PeriodicGridFunction& m, const PeriodicDensity& p) {
    if (m.n_grid() != p.n_grid()) throw GridMismatchError("mu norm: grids differ");
    double s = 0.0;
    for (std::size_t j = 0; j < p.n_grid(); ++j) s += std::norm(m[j]) * p[j];
    return s / static_cast<double>(p.n_grid());
}

PeriodicGridFunction multiplication_unitary(const PeriodicGridFunction& m) {
    const PeriodicGridFunction e1 = PeriodicGridFunction::exponential(1, m.n_grid());
    std::vector<cplx> v(m.n_grid());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = e1[j] * m[j];
    return PeriodicGridFunction(std::move(v));
}

Eigen::MatrixXcd nongaussian_realization(const LineFunction& psi, std::span<const double> s_grid,
                                         std::span<const double> t_grid, long n_terms) {
    if (n_terms < 1) throw ValidationError("kernel: n_terms must be at least 1");
    const auto shells = static_cast<Eigen::Index>(2 * n_terms + 1);
    auto columns = [&](std::span<const double> grid) {
        Eigen::MatrixXcd a(shells, static_cast<Eigen::Index>(grid.size()));
        std::vector<double> xi(static_cast<std::size_t>(shells));
        for (std::size_t c = 0; c < grid.size(); ++c) {
            for (long n = -n_terms; n <= n_terms; ++n) xi[static_cast<std::size_t>(n + n_terms)] = grid[c] + static_cast<double>(n);
            const auto v = fourier_transform(psi, xi);
            for (Eigen::Index i = 0; i < shells; ++i) a(i, static_cast<Eigen::Index>(c)) = v[static_cast<std::size_t>(i)];
        }
        return a;
    };
    const Eigen::MatrixXcd a = columns(s_grid);
    const Eigen::MatrixXcd b = columns(t_grid);
    return a.adjoint() * b;
}

}  // namespace transpec
