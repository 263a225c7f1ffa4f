#include "oracles.hpp"
#include "transpec/builtins.hpp"
#include "transpec/errors.hpp"
#include "transpec/wavelets.hpp"

#include <doctest.h>

using namespace transpec;

namespace {

double sup_gap(const PeriodicDensity& a, const PeriodicDensity& b) {
    double gap = 0.0;
    for (std::size_t j = 0; j < a.n_grid(); ++j) gap = std::max(gap, std::abs(a[j] - b[j]));
    return gap;
}

}  // namespace

TEST_CASE("stretched Haar pairs") {
    const HaarPair one = stretched_haar(1);
    CHECK(one.father.norm_squared() == 1.0);
    CHECK(one.father(0.5) == cplx(1.0));
    CHECK(one.mother(0.25) == cplx(1.0));
    CHECK(one.mother(0.75) == cplx(-1.0));
    CHECK(one.mother.support_hi() == 1.0);

    const HaarPair three = stretched_haar(3);
    CHECK(three.father.support_lo() == 0.0);
    CHECK(three.father.support_hi() == 3.0);
    CHECK(three.father(1.0) == cplx(1.0 / 3.0));
    CHECK(three.father.norm_squared() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(fourier_transform(three.mother, 0.0)) < 1e-15);
    CHECK(three.mother(1.0) == -three.mother(2.0));

    for (int k : {0, 2, -1, 4}) CHECK_THROWS_AS(stretched_haar(k), ValidationError);
}

TEST_CASE("closed-form densities") {
    for (double t : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        CHECK(stretched_haar_density_at(1, HaarComponent::father, t) == doctest::Approx(1.0));
        CHECK(stretched_haar_density_at(1, HaarComponent::mother, t) == doctest::Approx(1.0));
    }
    CHECK(stretched_haar_density_at(3, HaarComponent::father, 0.5) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(std::abs(stretched_haar_density_at(3, HaarComponent::father, 1.0 / 3.0)) < 1e-15);
    CHECK(stretched_haar_density_at(3, HaarComponent::father, 0.0) == doctest::Approx(1.0));
    CHECK(stretched_haar_density_at(3, HaarComponent::mother, 1.0 / 3.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    // removable points of the quotients: t = 0 for the sine part, t = 1 for the cosine part
    CHECK(stretched_haar_density_at(3, HaarComponent::mother, 0.0) == doctest::Approx(1.0 / 9.0));
    CHECK(stretched_haar_density_at(5, HaarComponent::mother, 1.0) == doctest::Approx(1.0 / 25.0));
    CHECK_THROWS_AS(stretched_haar_density_at(2, HaarComponent::father, 0.1), ValidationError);
}

TEST_CASE("stretched mother density is a trigonometric polynomial") {
    for (int j = 0; j < 200; ++j) {
        const double t = j / 200.0 + 1e-3;
        CHECK(stretched_haar_density_at(3, HaarComponent::mother, t) ==
              doctest::Approx(1.0 / 3.0 - 2.0 / 9.0 * std::cos(2 * kTwoPi * t)).epsilon(1e-13));
    }
}

TEST_CASE("mother density is four times the 1/(2k)^2 form") {
    for (int k : {3, 5, 7})
        for (double t : {0.1, 0.3, 0.45, 0.8}) {
            CAPTURE(k);
            CAPTURE(t);
            CHECK(stretched_haar_density_at(k, HaarComponent::mother, t) == doctest::Approx(4.0 * oracle::quarter_mother_density(k, t)));
        }
    // and only the corrected form integrates to ||psi_k||^2 = 1/k
    const PeriodicDensity p = stretched_haar_density(3, HaarComponent::mother, 4096);
    CHECK(p.integral() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("closed forms agree with periodization") {
    for (int k : {1, 3, 5})
        for (HaarComponent which : {HaarComponent::father, HaarComponent::mother}) {
            CAPTURE(k);
            const HaarPair pair = stretched_haar(k);
            const auto& f = which == HaarComponent::father ? pair.father : pair.mother;
            const PeriodicDensity closed = stretched_haar_density(k, which, 4096);
            CHECK(sup_gap(closed, spectral_density(f, {.n_grid = 4096, .n_terms = 2000})) < 1e-4);
            // the jump-pair oracle cancels terms of size csc^2(pi t), so it is good to ~1e-11 near t = 0
            for (std::size_t j = 1; j < 4096; j += 97) CHECK(std::abs(closed[j] - oracle::exact_density(f, closed.x(j))) < 1e-9);
        }
}

TEST_CASE("father/mother consistency relation") {
    const PeriodicDensity one(std::vector<double>(64, 1.0));
    CHECK(consistency_check(one, one) == 0.0);
    for (int k : {1, 3, 5, 7, 9}) {
        CAPTURE(k);
        CHECK(consistency_check(stretched_haar_density(k, HaarComponent::father, 4096),
                                stretched_haar_density(k, HaarComponent::mother, 4096)) < 1e-9);
    }
    const HaarPair three = stretched_haar(3);
    const SpectralOptions options{.n_grid = 4096, .n_terms = 2000};
    CHECK(consistency_check(spectral_density(three.father, options), spectral_density(three.mother, options)) < 1e-4);

    // the 1/(2k)^2 form breaks the relation
    const PeriodicDensity quarter = PeriodicDensity::sample(4096, [](double t) {
        return t == 0.0 ? 1.0 / 36.0 : oracle::quarter_mother_density(3, t);
    });
    CHECK(consistency_check(stretched_haar_density(3, HaarComponent::father, 4096), quarter) > 0.1);

    CHECK_THROWS_AS(consistency_check(one, PeriodicDensity(std::vector<double>(32, 1.0))), GridMismatchError);
    CHECK_THROWS_AS(consistency_check(PeriodicDensity({1.0, 1.0, 1.0}), PeriodicDensity({1.0, 1.0, 1.0})), GridMismatchError);
}

TEST_CASE("quadrature mirror filters") {
    const QmfReport haar = qmf_check(DyadicFilter::haar(1024));
    CHECK(haar.max_defect < 1e-12);
    CHECK(haar.lowpass_defect < 1e-15);

    const QmfReport flat = qmf_check(DyadicFilter(std::vector<cplx>(16, 1.0)));
    CHECK(flat.max_defect == doctest::Approx(1.0));
    CHECK(flat.lowpass_defect == 0.0);

    CHECK(qmf_check(DyadicFilter(std::vector<cplx>(16, 0.0))).lowpass_defect == 1.0);

    // m0 for the k-stretched father: (1 + e^{-2 pi i k t}) / 2 is also a QMF for odd k
    const QmfReport stretched =
        qmf_check(DyadicFilter::sample(512, [](double t) { return 0.5 * (1.0 + std::polar(1.0, -kTwoPi * 3 * t)); }));
    CHECK(stretched.max_defect < 1e-12);

    CHECK_THROWS_AS(DyadicFilter(std::vector<cplx>(15, 1.0)), ValidationError);
}

TEST_CASE("dyadic atoms") {
    const PiecewiseConstant psi = stretched_haar(1).mother;
    const PiecewiseConstant a = dyadic_atom(psi, 2, 1);
    CHECK(a.support_lo() == 0.25);
    CHECK(a.support_hi() == 0.5);
    CHECK(a.norm_squared() == doctest::Approx(1.0));
    CHECK(a(0.3) == cplx(2.0));
    const PiecewiseConstant b = dyadic_atom(psi, -1, -3);
    CHECK(b.support_lo() == -6.0);
    CHECK(b.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("wavelet Parseval ratios") {
    const LineFunction box = builtin_function("haar_father");
    const LineFunction wide = PiecewiseConstant::indicator(-1.5, 2.25, cplx(0.5, -0.3));
    const LineFunction zero = PiecewiseConstant({0.0, 1.0}, {0.0});

    const auto haar = parseval_wavelet_check(stretched_haar(1).mother, {}, {box, zero});
    CHECK(haar[0] > 0.99);
    CHECK(haar[0] <= 1.0 + 1e-12);
    CHECK(haar[1] == 0.0);

    const PiecewiseConstant psi3 = stretched_haar(3).mother;
    double previous = 0.0;
    for (int j : {2, 4, 6, 8}) {
        CAPTURE(j);
        const auto r = parseval_wavelet_check(psi3, {.j_lo = -j, .j_hi = j, .k_lo = -8L * j, .k_hi = 8L * j}, {box, wide});
        CHECK(r[0] > previous);
        CHECK(r[0] <= 1.0 + 1e-12);
        CHECK(r[1] <= 1.0 + 1e-12);
        previous = r[0];
    }
    CHECK(previous > 0.95);
    const auto full = parseval_wavelet_check(psi3, {}, {box, wide});
    CHECK(full[0] > 0.95);
    CHECK(full[1] > 0.95);
}
