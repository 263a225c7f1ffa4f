#include "oracles.hpp"
#include "transpec/builtins.hpp"
#include "transpec/errors.hpp"
#include "transpec/matrix_density.hpp"

#include <doctest.h>

#include <random>

using namespace transpec;

namespace {

const LineFunction kPhi = builtin_function("haar_father");

double max_entry_gap(const MatrixDensityGrid& p, const Eigen::MatrixXcd& m) {
    double gap = 0.0;
    for (const auto& a : p.matrices()) gap = std::max(gap, (a - m).cwiseAbs().maxCoeff());
    return gap;
}

std::vector<std::vector<LineFunction>> corpus_families() {
    const auto c = oracle::piecewise_corpus();
    return {{kPhi},
            {kPhi, translate(kPhi, 1)},
            {kPhi, kPhi},
            {c[2].f, translate(c[2].f, 1)},
            {c[2].f, c[3].f, c[6].f},
            {c[6].f, c[7].f},
            {builtin_function("shannon:[0,1)"), builtin_function("shannon:[1,1.5)")},
            {builtin_function("shannon:[0,0.5)"), builtin_function("shannon:[0.25,0.75)"), builtin_function("shannon:[0,1)")}};
}

}  // namespace

TEST_CASE("matrix density of small families") {
    const MatrixDensityGrid one = matrix_density({kPhi}, {.n_grid = 256});
    CHECK(one.n_family() == 1);
    CHECK(max_entry_gap(one, Eigen::MatrixXcd::Identity(1, 1)) < 1e-6);

    const MatrixDensityGrid pair = matrix_density({kPhi, translate(kPhi, 1)}, {.n_grid = 64, .n_terms = 4, .domain = DensityDomain::time});
    CHECK(max_entry_gap(pair, Eigen::MatrixXcd::Identity(2, 2)) == 0.0);

    const MatrixDensityGrid twice = matrix_density({kPhi, kPhi}, {.n_grid = 256});
    CHECK(max_entry_gap(twice, Eigen::MatrixXcd::Ones(2, 2)) < 1e-6);
}

TEST_CASE("diagonal entries are the scalar densities") {
    const auto c = oracle::piecewise_corpus();
    const std::vector<LineFunction> family = {c[2].f, c[3].f, c[6].f};
    const MatrixDensityGrid p = matrix_density(family, {.n_grid = 512});
    for (std::size_t r = 0; r < family.size(); ++r) {
        const PeriodicDensity d = p.diagonal(r);
        const PeriodicDensity s = spectral_density(family[r], {.n_grid = 512});
        for (std::size_t j = 0; j < 512; ++j) CHECK(std::abs(d[j] - s[j]) < 1e-12);
    }
}

TEST_CASE("Gram matrices") {
    CHECK((gram_matrix({kPhi}) - Eigen::MatrixXcd::Identity(1, 1)).norm() == 0.0);
    const LineFunction phi3 = builtin_function("stretched_haar_father:3");
    Eigen::MatrixXcd expected(2, 2);
    expected << 1.0 / 3.0, 2.0 / 9.0, 2.0 / 9.0, 1.0 / 3.0;
    CHECK((gram_matrix({phi3, translate(phi3, 1)}) - expected).cwiseAbs().maxCoeff() < 1e-15);

    for (const auto& family : corpus_families()) {
        const Eigen::MatrixXcd g = gram_matrix(family);
        CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
        CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
}

TEST_CASE("matrix densities integrate to the Gram matrix") {
    for (const auto& family : corpus_families()) {
        const Eigen::MatrixXcd g = gram_matrix(family);
        const Eigen::MatrixXcd freq = gram_integral(matrix_density(family, {.n_grid = 1024}));
        CHECK((freq - g).cwiseAbs().maxCoeff() < 1e-6);

        bool compact = true;
        bool dyadic = true;
        double bound = 0.0;
        for (const auto& f : family) {
            const auto* pc = std::get_if<PiecewiseConstant>(&f);
            compact = compact && pc != nullptr;
            if (pc == nullptr) break;
            for (double b : pc->breakpoints()) dyadic = dyadic && b * 1024 == std::floor(b * 1024);
            for (const cplx& v : pc->values()) bound = std::max(bound, std::abs(v));
        }
        if (!compact) continue;
        const Eigen::MatrixXcd time = gram_integral(matrix_density(family, {.n_grid = 1024, .n_terms = 8, .domain = DensityDomain::time}));
        if (dyadic) {
            // breakpoints on the grid: the grid mean of the piecewise-constant density is exact
            CHECK((time - g).cwiseAbs().maxCoeff() < 1e-6);
            CHECK((time - freq).cwiseAbs().maxCoeff() < 1e-6);
        } else {
            // each breakpoint off the grid misplaces at most one cell of mass
            std::size_t jumps = 0;
            for (const auto& f : family) jumps += std::get<PiecewiseConstant>(f).breakpoints().size();
            CHECK((time - g).cwiseAbs().maxCoeff() < static_cast<double>(jumps) * bound * bound / 1024);
        }
    }
}

TEST_CASE("pointwise operator inequality") {
    SUBCASE("scalar") {
        std::vector<Eigen::MatrixXcd> m;
        for (int j = 0; j < 32; ++j) m.push_back(Eigen::MatrixXcd::Constant(1, 1, j / 31.0));
        const OperatorInequalityReport r = operator_inequality_check(MatrixDensityGrid(m), Eigen::VectorXcd::Ones(1));
        CHECK(r.max_violation <= 0.0);
        CHECK(r.lambda == doctest::Approx(1.0));
    }
    SUBCASE("identity is the equality case") {
        const MatrixDensityGrid id(std::vector<Eigen::MatrixXcd>(8, Eigen::MatrixXcd::Identity(3, 3)));
        std::mt19937_64 rng(3);
        std::normal_distribution<double> z;
        Eigen::VectorXcd v(3);
        for (int i = 0; i < 3; ++i) v(i) = cplx(z(rng), z(rng));
        const OperatorInequalityReport r = operator_inequality_check(id, v);
        CHECK(std::abs(r.max_violation) < 1e-14);
        CHECK(r.lambda == doctest::Approx(1.0));
    }
    SUBCASE("random PSD grids") {
        std::mt19937_64 rng(20240611);
        std::normal_distribution<double> z;
        for (int trial = 0; trial < 100; ++trial) {
            const MatrixDensityGrid p(oracle::random_psd_grid(1 + trial % 4, 16, rng));
            Eigen::VectorXcd v(static_cast<Eigen::Index>(p.n_family()));
            for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(z(rng), z(rng));
            CHECK(operator_inequality_check(p, v).max_violation <= 1e-9);
        }
    }
}

TEST_CASE("weighted norms") {
    const std::vector<PeriodicGridFunction> one = {PeriodicGridFunction(std::vector<cplx>(64, 1.0))};
    CHECK(weighted_norm(one, MatrixDensityGrid(std::vector<Eigen::MatrixXcd>(64, Eigen::MatrixXcd::Identity(1, 1)))) ==
          doctest::Approx(1.0));

    const LineFunction phi3 = builtin_function("stretched_haar_father:3");
    const MatrixDensityGrid p3 = matrix_density({phi3});
    const std::vector<PeriodicGridFunction> e = {PeriodicGridFunction::exponential(2, 4096)};
    CHECK(weighted_norm(e, p3) == doctest::Approx(verify_dependence(phi3, CoefficientSequence(2, {1.0}))).epsilon(1e-6));

    const MatrixDensityGrid pair = matrix_density({kPhi, translate(kPhi, 1)}, {.n_grid = 64, .n_terms = 4, .domain = DensityDomain::time});
    const std::vector<PeriodicGridFunction> diff = {PeriodicGridFunction(std::vector<cplx>(64, 1.0)),
                                                    PeriodicGridFunction(std::vector<cplx>(64, -1.0))};
    CHECK(std::abs(weighted_norm(diff, pair) - std::sqrt(2.0)) < 1e-6);

    CHECK_THROWS_AS(weighted_norm(one, pair), GridMismatchError);
}

TEST_CASE("cyclic decomposition") {
    const CyclicDecomposition flat = cyclic_decomposition(matrix_density({kPhi}, {.n_grid = 128}));
    for (int m : flat.multiplicity) CHECK(m == 1);
    CHECK(flat.supports[0].measure() == 1.0);

    const CyclicDecomposition twice = cyclic_decomposition(matrix_density({kPhi, kPhi}, {.n_grid = 128}));
    for (int m : twice.multiplicity) CHECK(m == 1);
    CHECK(twice.supports[1].empty());

    // chi_[0,1) and chi_[0,1/2) have proportional fibers: still rank one
    const CyclicDecomposition nested =
        cyclic_decomposition(matrix_density({builtin_function("shannon:[0,1)"), builtin_function("shannon:[0,0.5)")}, {.n_grid = 128}));
    CHECK(nested.supports[0].measure() == 1.0);
    CHECK(nested.supports[1].empty());

    // chi_[0,1) and chi_[1,3/2) share the periodized support [0,1/2) with orthogonal fibers
    const CyclicDecomposition split =
        cyclic_decomposition(matrix_density({builtin_function("shannon:[0,1)"), builtin_function("shannon:[1,1.5)")}, {.n_grid = 128}));
    CHECK(split.supports[0].measure() == 1.0);
    CHECK(split.supports[1].measure() == 0.5);
    REQUIRE(split.supports[1].runs().size() == 1);
    CHECK(split.supports[1].runs()[0].lo == 0.0);
    CHECK(split.supports[1].runs()[0].hi == 0.5);

    for (const auto& family : corpus_families()) {
        const CyclicDecomposition d = cyclic_decomposition(matrix_density(family, {.n_grid = 512}));
        REQUIRE(d.supports.size() == family.size());
        double total = 0.0;
        for (std::size_t i = 0; i < d.supports.size(); ++i) {
            total += d.supports[i].measure();
            if (i == 0) continue;
            for (std::size_t j = 0; j < 512; ++j)
                if (d.supports[i].contains(j)) CHECK(d.supports[i - 1].contains(j));
        }
        double integral = 0.0;
        for (int m : d.multiplicity) integral += m;
        CHECK(total == doctest::Approx(integral / 512));
    }
}

TEST_CASE("matrix grid validation") {
    Eigen::MatrixXcd skew(2, 2);
    skew << 1.0, 0.5, 0.4, 1.0;
    CHECK_THROWS_AS(MatrixDensityGrid({skew}), ValidationError);
    Eigen::MatrixXcd indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(MatrixDensityGrid({indefinite}), NotPositiveSemidefiniteError);
    CHECK_THROWS_AS(MatrixDensityGrid({Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(3, 3)}), ValidationError);
    CHECK_THROWS_AS(MatrixDensityGrid({}), ValidationError);
}
