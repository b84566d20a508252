#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlpm/herm.hpp"
#include "nlpm/random.hpp"

using namespace nlpm;

namespace {

HermMatrix ones2(int dim = 2) {
    CMatrix raw(dim);
    raw.at(0, 0) = 1;
    raw.at(0, 1) = 1;
    raw.at(1, 0) = 1;
    raw.at(1, 1) = 1;
    return HermMatrix::hermitize(raw);
}

double reconstruction_residual(const HermMatrix& h) {
    const SpectralDecomp d = eig(h);
    return (recompose(d, d.eigenvalues) - h).fro_norm() / std::max(1.0, h.fro_norm());
}

double orthonormality_residual(const SpectralDecomp& d) {
    const CMatrix g = d.vectors.adjoint() * d.vectors;
    return (g - CMatrix::identity(g.dim())).fro_norm();
}

}  // namespace

TEST_CASE("already-diagonal input decomposes exactly") {
    const HermMatrix a = HermMatrix::diagonal({3.0, 1.5});
    const SpectralDecomp d = eig(a);
    CHECK(d.eigenvalues[0] == 3.0);
    CHECK(d.eigenvalues[1] == 1.5);
    CHECK(d.vectors == CMatrix::identity(2));
}

TEST_CASE("all-ones matrix has spectrum {2, 0} with the symmetric eigenvectors") {
    const SpectralDecomp d = eig(ones2());
    CHECK(d.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-12));
    // Eigenvector for 2 is (1,1)/sqrt(2) up to phase.
    const double overlap = std::abs(d.vectors.at(0, 0) + d.vectors.at(1, 0)) / std::sqrt(2.0);
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));
    const double overlap2 = std::abs(d.vectors.at(0, 1) - d.vectors.at(1, 1)) / std::sqrt(2.0);
    CHECK(overlap2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random hermitian matrices reconstruct to 1e-9 relative") {
    Rng rng(7);
    for (int t = 0; t < 500; ++t) {
        const int dim = 2 + t % 7;
        const HermMatrix h = rand_herm(dim, rng);
        CHECK(reconstruction_residual(h) <= 1e-9);
        CHECK(orthonormality_residual(eig(h)) <= 1e-9);
    }
}

TEST_CASE("degenerate spectra keep the stable diagonal order") {
    const HermMatrix a = HermMatrix::diagonal({2.0, 2.0, 1.0});
    const SpectralDecomp d = eig(a);
    CHECK(d.eigenvalues == std::vector<double>{2.0, 2.0, 1.0});
    CHECK(d.vectors == CMatrix::identity(3));
}

TEST_CASE("eigensolver reports non-convergence when the sweep cap is exhausted") {
    Rng rng(11);
    const HermMatrix h = rand_herm(8, rng);
    CHECK_THROWS_AS(eig_capped(h, Tolerance{}, 1), NonConvergence);
    // Off-diagonals are annihilated exactly, so even a zero target converges
    // within the production cap.
    Tolerance exact;
    exact.atol = 0.0;
    CHECK_NOTHROW(eig(h, exact));
}

TEST_CASE("psd predicate") {
    CHECK(is_psd(HermMatrix::identity(3)));
    CHECK(is_psd(ones2()));
    CHECK_FALSE(is_psd(HermMatrix::diagonal({1.0, -1e-6})));
}

TEST_CASE("loewner order on the worked 2x2 pair") {
    const HermMatrix a = ones2();
    const HermMatrix b = HermMatrix::diagonal({3.0, 1.5});
    CHECK(loewner_leq(a, b));
    CHECK(loewner_leq(a, a));
    CMatrix fa_raw(2);
    fa_raw.at(0, 0) = 1.5;
    fa_raw.at(0, 1) = 0.5;
    fa_raw.at(1, 0) = 0.5;
    fa_raw.at(1, 1) = 1.5;
    const HermMatrix fa = HermMatrix::hermitize(fa_raw);
    const HermMatrix fb = HermMatrix::diagonal({3.0, 1.5});
    CHECK_FALSE(loewner_leq(fa, fb));
    CHECK_THROWS_AS(loewner_leq(a, HermMatrix::identity(3)), DimMismatch);
}

TEST_CASE("loewner order is transitive on sampled exact-order triples") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        const int dim = 2 + t % 4;
        const HermMatrix c = rand_psd(dim, rng, 2.0);
        const HermMatrix b = rand_psd_between(c, rng);
        const HermMatrix a = rand_psd_between(b, rng);
        CHECK(loewner_margin(a, c) >= -1e-10);
    }
}

TEST_CASE("matrix square root") {
    const HermMatrix r = sqrt_psd(HermMatrix::diagonal({4.0, 9.0}));
    CHECK((r - HermMatrix::diagonal({2.0, 3.0})).fro_norm() <= 1e-12);

    const HermMatrix s = sqrt_psd(ones2());
    CHECK((HermMatrix::hermitize(s.mat() * s.mat()) - ones2()).fro_norm() <= 1e-12);
    CHECK((s - (1.0 / std::sqrt(2.0)) * ones2()).fro_norm() <= 1e-12);

    CHECK_THROWS_AS(sqrt_psd(HermMatrix::diagonal({1.0, -0.5})), NotPsd);
}

TEST_CASE("inverse of a positive definite matrix") {
    Rng rng(17);
    const HermMatrix a = rand_psd(4, rng, 2.0) + HermMatrix::scaled_identity(4, 0.5);
    const HermMatrix inv = inv_psd(a);
    const CMatrix prod = inv.mat() * a.mat();
    CHECK((prod - CMatrix::identity(4)).fro_norm() <= 1e-10);
    CHECK_THROWS_AS(inv_psd(HermMatrix::diagonal({1.0, 0.0})), Singular);
}

TEST_CASE("contraction predicate accepts the averaging matrix") {
    CMatrix c(2);
    c.at(0, 0) = 0.5;
    c.at(0, 1) = 0.5;
    c.at(1, 0) = 0.5;
    c.at(1, 1) = 0.5;
    CHECK(is_contraction(c));
    CHECK_FALSE(is_contraction(2.0 * CMatrix::identity(2)));
}

TEST_CASE("rand_psd_between produces exact-order pairs") {
    Rng rng(19);
    for (int t = 0; t < 100; ++t) {
        const int dim = 2 + t % 5;
        const HermMatrix a = rand_psd(dim, rng, 1.5);
        const HermMatrix x = rand_psd_between(a, rng);
        CHECK(loewner_leq(x, a));
        CHECK(is_psd(x));
    }
}

TEST_CASE("positive contractions sample inside the cone and the unit ball") {
    Rng rng(23);
    for (int t = 0; t < 50; ++t) {
        const CMatrix c = rand_contraction(3, rng, ContractionClass::positive);
        CHECK(is_psd(HermMatrix::hermitize(c)));
        CHECK(is_contraction(c));
        const CMatrix g = rand_contraction(3, rng, ContractionClass::general);
        CHECK(is_contraction(g));
    }
}

TEST_CASE("spectral norm of rand_psd stays inside (0, scale]") {
    Rng rng(29);
    for (int t = 0; t < 1000; ++t) {
        const double top = eig(rand_psd(4, rng, 1.0)).lambda_max();
        CHECK(top > 0.0);
        CHECK(top <= 1.0 + 1e-12);
    }
}

TEST_CASE("min-max monotonicity of eigenvalues on exact-order pairs") {
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const int dim = 2 + t % 5;
        const HermMatrix b = rand_psd(dim, rng, 2.0);
        const HermMatrix a = rand_psd_between(b, rng);
        const SpectralDecomp da = eig(a), db = eig(b);
        for (int i = 0; i < dim; ++i) CHECK(da.eigenvalues[i] <= db.eigenvalues[i] + 1e-9);
    }
}

TEST_CASE("solver holds up at desk-scale dimensions") {
    Rng rng(41);
    for (int dim : {16, 24, 32}) {
        const HermMatrix h = rand_herm(dim, rng);
        CHECK(reconstruction_residual(h) <= 1e-9);
        CHECK(orthonormality_residual(eig(h)) <= 1e-9);
    }
}

TEST_CASE("complex entries round-trip the solver") {
    Rng rng(37);
    for (int t = 0; t < 50; ++t) {
        const HermMatrix h = rand_herm(5, rng);
        bool any_imag = false;
        for (int i = 0; i < 5 && !any_imag; ++i)
            for (int j = 0; j < 5; ++j)
                if (h.at(i, j).imag() != 0.0) {
                    any_imag = true;
                    break;
                }
        CHECK(any_imag);
        CHECK(reconstruction_residual(h) <= 1e-9);
    }
}
