#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlpm/means.hpp"
#include "nlpm/random.hpp"

using namespace nlpm;

namespace {

HermMatrix well_conditioned_psd(int dim, Rng& rng) {
    return rand_psd(dim, rng, 2.0) + HermMatrix::scaled_identity(dim, 0.25);
}

}  // namespace

TEST_CASE("identity representing function recovers the left argument") {
    Rng rng(3);
    const MeanSpec m = make_mean("left", fn_identity());
    for (int t = 0; t < 40; ++t) {
        const int dim = 2 + t % 4;
        const HermMatrix a = rand_psd(dim, rng, 2.0);
        const HermMatrix b = well_conditioned_psd(dim, rng);
        CHECK(spectral_norm(mean_eval(m, a, b) - a) <= 1e-9);
    }
}

TEST_CASE("sqrt mean on commuting matrices is the scalar geometric mean") {
    const MeanSpec m = make_mean("geometric", fn_sqrt());
    const HermMatrix g = mean_eval(m, HermMatrix::diagonal({4.0}), HermMatrix::diagonal({1.0}));
    CHECK((g - HermMatrix::diagonal({2.0})).fro_norm() <= 1e-12);

    Rng rng(5);
    for (int t = 0; t < 25; ++t) {
        const CMatrix u = rand_unitary(3, rng);
        SpectralDecomp base;
        base.vectors = u;
        base.eigenvalues = {1.5, 1.0, 0.5};
        const HermMatrix a = recompose(base, {1.5, 1.0, 0.5});
        const HermMatrix b = recompose(base, {2.0, 0.7, 0.3});
        const HermMatrix gm = mean_eval(m, a, b);
        std::vector<double> expect(3);
        const std::vector<double> la{1.5, 1.0, 0.5}, lb{2.0, 0.7, 0.3};
        for (int i = 0; i < 3; ++i) expect[i] = std::sqrt(la[i] * lb[i]);
        const HermMatrix target = recompose(base, expect);
        CHECK(spectral_norm(gm - target) <= 1e-9);
    }
}

TEST_CASE("geometric mean with the unit is the square root") {
    Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        const HermMatrix b = rand_psd(3, rng, 2.0);
        CHECK(spectral_norm(geometric_mean(HermMatrix::identity(3), b) - sqrt_psd(b)) <= 1e-9);
    }
}

TEST_CASE("congruence identity: c a c recovers the minorant") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const int dim = 2 + t % 5;
        const HermMatrix a = well_conditioned_psd(dim, rng);
        const HermMatrix x = rand_psd_between(a, rng);
        const HermMatrix c = geometric_mean(inv_psd(a), x);
        CHECK(spectral_norm(congruence(c.mat(), a) - x) <= 1e-8 * spectral_norm(a));
        CHECK(eig(c).lambda_max() <= 1.0 + 1e-9);
    }
}

TEST_CASE("upper congruence identity: d b d recovers the dominated matrix") {
    Rng rng(13);
    for (int t = 0; t < 60; ++t) {
        const int dim = 2 + t % 4;
        const HermMatrix a = well_conditioned_psd(dim, rng);
        const HermMatrix gap = rand_psd(dim, rng, 1.0);
        const HermMatrix b = a + gap + HermMatrix::scaled_identity(dim, 0.1);
        const HermMatrix d = geometric_mean(a, inv_psd(b));
        CHECK(spectral_norm(congruence(d.mat(), b) - a) <= 1e-8 * spectral_norm(b));
        CHECK(eig(d).lambda_max() <= 1.0 + 1e-9);
    }
}

TEST_CASE("geometric mean is symmetric for invertible pairs") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        const HermMatrix a = well_conditioned_psd(3, rng);
        const HermMatrix b = well_conditioned_psd(3, rng);
        CHECK(spectral_norm(geometric_mean(a, b) - geometric_mean(b, a)) <= 1e-9);
    }
}

TEST_CASE("means from operator monotone functions are monotone in the left slot") {
    Rng rng(19);
    const MeanSpec m = make_mean("geometric", fn_sqrt());
    for (int t = 0; t < 50; ++t) {
        const int dim = 2 + t % 3;
        const HermMatrix a2 = rand_psd(dim, rng, 2.0);
        const HermMatrix a1 = rand_psd_between(a2, rng);
        const HermMatrix b = well_conditioned_psd(dim, rng);
        CHECK(loewner_margin(mean_eval(m, a1, b), mean_eval(m, a2, b)) >= -1e-9);
    }
}

TEST_CASE("contractions converge to the unit along staircase chains") {
    Rng rng(23);
    const CMatrix u = rand_unitary(3, rng);
    SpectralDecomp base;
    base.vectors = u;
    base.eigenvalues = {2.0, 1.2, 0.6};
    const HermMatrix a = recompose(base, base.eigenvalues);
    const HermMatrix inv_a = inv_psd(a);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= 20; n += 2) {
        const HermMatrix an = staircase_lower(a, n, StaircaseMode::invertible);
        const HermMatrix c = geometric_mean(inv_a, an);
        const double gap = spectral_norm(c - HermMatrix::identity(3));
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap <= 1e-4);
}

TEST_CASE("singular right argument is a hard error, epsilon shift is the diagnostic") {
    const MeanSpec m = make_mean("geometric", fn_sqrt());
    const HermMatrix a = HermMatrix::identity(2);
    const HermMatrix b = HermMatrix::diagonal({1.0, 0.0});
    CHECK_THROWS_AS(mean_eval(m, a, b), Singular);
    CHECK_THROWS_AS(geometric_mean(b, a), Singular);
    const HermMatrix shifted = mean_eval(m, a, b, Tolerance{}, 1e-6);
    CHECK(is_psd(shifted));
}
