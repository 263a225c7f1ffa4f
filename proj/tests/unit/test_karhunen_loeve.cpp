#include "oracles.hpp"
#include "transpec/errors.hpp"
#include "transpec/karhunen_loeve.hpp"

#include <doctest.h>

#include <random>

using namespace transpec;

namespace {

std::vector<double> unit_grid(std::size_t n_points) {
    std::vector<double> t(n_points);
    for (std::size_t i = 0; i < n_points; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n_points - 1);
    return t;
}

}  // namespace

TEST_CASE("Brownian kernel spectrum") {
    const auto grid = unit_grid(513);
    const Eigen::MatrixXcd k = brownian_kernel(grid);
    CHECK(k(3, 7) == cplx(grid[3]));
    const KLExpansion e = kl_decompose(k, grid);
    CHECK(e.dt == doctest::Approx(1.0 / 512));
    CHECK(std::abs(e.eigenvalues[0] - 4.0 / (kPi * kPi)) < 2e-3);
    for (int j = 1; j <= 5; ++j) CHECK(e.eigenvalues[static_cast<std::size_t>(j - 1)] == doctest::Approx(oracle::brownian_eigenvalue(j)).epsilon(2e-2));

    for (std::size_t j = 1; j < e.n_modes(); ++j) CHECK(e.eigenvalues[j] <= e.eigenvalues[j - 1]);
    CHECK(e.eigenvalues.back() >= 0.0);
    // t = 0 row and column vanish: exactly one null mode
    CHECK(nondegenerate_modes(e) == 512);

    const Eigen::MatrixXcd gram = e.dt * e.eigenfunctions.adjoint() * e.eigenfunctions;
    CHECK((gram - Eigen::MatrixXcd::Identity(513, 513)).cwiseAbs().maxCoeff() < 1e-8);

    double sum = 0.0;
    for (double v : e.eigenvalues) sum += v;
    CHECK(std::abs(sum - e.dt * k.trace().real()) < 1e-9);
    CHECK(e.eigenvalues[0] <= e.dt * k.trace().real());

    // analytic tail of the continuous kernel
    CHECK(kl_tail_fraction(e, 10) == doctest::Approx(oracle::brownian_tail_fraction(10)).epsilon(2e-2));
    CHECK(kl_tail_fraction(e, 0) == 1.0);
    CHECK(kl_tail_fraction(e, 513) == 0.0);
}

TEST_CASE("trivial kernels") {
    const auto grid = unit_grid(33);
    const KLExpansion flat = kl_decompose(2.5 * Eigen::MatrixXcd::Identity(33, 33), grid);
    for (double v : flat.eigenvalues) CHECK(v == doctest::Approx(2.5 / 32));

    Eigen::VectorXcd v(33);
    for (Eigen::Index i = 0; i < 33; ++i) v(i) = cplx(std::cos(0.3 * static_cast<double>(i)), 0.1 * static_cast<double>(i));
    const KLExpansion rank1 = kl_decompose(v * v.adjoint(), grid);
    CHECK(rank1.eigenvalues[0] == doctest::Approx(v.squaredNorm() / 32));
    CHECK(nondegenerate_modes(rank1) == 1);
    CHECK(rank1.eigenvalues[1] < 1e-12);
}

TEST_CASE("kernel validation") {
    const auto grid = unit_grid(4);
    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Identity(4, 4);
    skew(0, 1) = 0.5;
    CHECK_THROWS_AS(kl_decompose(skew, grid), ValidationError);
    Eigen::MatrixXcd indefinite = Eigen::MatrixXcd::Identity(4, 4);
    indefinite(0, 0) = -1.0;
    CHECK_THROWS_AS(kl_decompose(indefinite, grid), NotPositiveSemidefiniteError);
    CHECK_THROWS_AS(kl_decompose(Eigen::MatrixXcd::Identity(3, 3), grid), ValidationError);
    CHECK_THROWS_AS(kl_decompose(Eigen::MatrixXcd::Identity(3, 3), {0.0, 0.1, 0.5}), ValidationError);
}

TEST_CASE("coefficients and reconstruction on a Brownian ensemble") {
    const std::size_t m = 10000;
    const PathEnsemble x = brownian_paths(257, m, 31);
    const KLExpansion e = kl_decompose(brownian_kernel(x.time_grid), x.time_grid);
    const Eigen::MatrixXcd z = kl_coefficients(x, e, 5);
    CHECK(z.rows() == static_cast<Eigen::Index>(m));

    const Eigen::MatrixXcd corr = z.adjoint() * z / static_cast<double>(m);
    CHECK((corr - Eigen::MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 0.05);

    for (Eigen::Index k = 0; k < 5; ++k) {
        const Eigen::ArrayXd c = z.col(k).real().array();
        const double mean = c.mean();
        const double var = (c - mean).square().mean();
        const double kurtosis = (c - mean).pow(4).mean() / (var * var);
        CHECK(std::abs(kurtosis - 3.0) < 4.0 * std::sqrt(24.0 / static_cast<double>(m)));
    }

    const std::size_t full = nondegenerate_modes(e);
    const Eigen::MatrixXcd z_all = kl_coefficients(x, e, full);
    CHECK(reconstruction_error(x, kl_reconstruct(e, z_all, full)).relative < 1e-8);
    CHECK_THROWS_AS(kl_coefficients(x, e, full + 1), DegenerateModeError);

    const PathEnsemble none = kl_reconstruct(e, z, 0);
    CHECK(none.paths.cwiseAbs().maxCoeff() == 0.0);
    CHECK(none.n_paths() == m);

    const ReconstructionError err = reconstruction_error(x, kl_reconstruct(e, kl_coefficients(x, e, 10), 10));
    CHECK(err.standard_error > 0.0);
    CHECK(std::abs(err.relative - kl_tail_fraction(e, 10)) < 4.0 * err.standard_error);
}

TEST_CASE("zero ensemble has zero coefficients") {
    const auto grid = unit_grid(17);
    const KLExpansion e = kl_decompose(brownian_kernel(grid), grid);
    PathEnsemble zero;
    zero.time_grid = grid;
    zero.paths = Eigen::MatrixXcd::Zero(4, 17);
    CHECK(kl_coefficients(zero, e, 3).cwiseAbs().maxCoeff() == 0.0);
    const ReconstructionError r = reconstruction_error(zero, zero);
    CHECK(r.relative == 0.0);

    PathEnsemble shifted = zero;
    shifted.time_grid = unit_grid(18);
    CHECK_THROWS_AS(kl_coefficients(shifted, e, 1), GridMismatchError);
}

TEST_CASE("KL basis captures the most variance") {
    const auto grid = unit_grid(129);
    const Eigen::MatrixXcd k = brownian_kernel(grid);
    const KLExpansion e = kl_decompose(k, grid);
    const Eigen::MatrixXcd fourier = oracle::fourier_basis(129, e.dt);
    const Eigen::MatrixXcd standard = oracle::standard_basis(k, e.dt);
    CHECK((e.dt * fourier.adjoint() * fourier - Eigen::MatrixXcd::Identity(129, 129)).cwiseAbs().maxCoeff() < 1e-10);

    const PathEnsemble x = brownian_paths(129, 4000, 77);
    for (std::size_t n : {1UL, 2UL, 5UL, 10UL, 20UL, 60UL}) {
        CAPTURE(n);
        const double kl = oracle::captured_variance(k, e.eigenfunctions, n, e.dt);
        CHECK(kl >= oracle::captured_variance(k, fourier, n, e.dt) - 1e-12);
        CHECK(kl >= oracle::captured_variance(k, standard, n, e.dt) - 1e-12);

        const double err = projection_error(x, e.eigenfunctions, n, e.dt);
        CHECK(err <= projection_error(x, fourier, n, e.dt));
        CHECK(err <= projection_error(x, standard, n, e.dt));
    }
}
