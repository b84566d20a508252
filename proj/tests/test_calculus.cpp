#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nlpm/calculus.hpp"
#include "nlpm/random.hpp"

using namespace nlpm;

namespace {

HermMatrix ones2() {
    CMatrix raw(2);
    raw.at(0, 0) = 1;
    raw.at(0, 1) = 1;
    raw.at(1, 0) = 1;
    raw.at(1, 1) = 1;
    return HermMatrix::hermitize(raw);
}

// Test-side PSD oracle via leading principal minors (Sylvester), independent
// of the Jacobi solver.
double det_minor(const std::vector<std::vector<double>>& m, int k) {
    std::vector<std::vector<double>> a(m.begin(), m.begin() + k);
    for (auto& row : a) row.resize(k);
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (a[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < k; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int cc = c; cc < k; ++cc) a[r][cc] -= f * a[c][cc];
        }
    }
    return det;
}

bool psd_by_minors(const std::vector<std::vector<double>>& m, double slack) {
    for (size_t k = 1; k <= m.size(); ++k)
        if (det_minor(m, static_cast<int>(k)) < -slack) return false;
    return true;
}

}  // namespace

TEST_CASE("identity calculus returns the input") {
    Rng rng(3);
    for (int t = 0; t < 25; ++t) {
        const HermMatrix a = rand_psd(4, rng, 2.0);
        CHECK((apply_function(fn_identity(), a) - a).fro_norm() <= 1e-12);
    }
}

TEST_CASE("1 v t calculus on the all-ones matrix") {
    const HermMatrix fa = apply_function(fn_max_one(), ones2());
    CMatrix expect(2);
    expect.at(0, 0) = 1.5;
    expect.at(0, 1) = 0.5;
    expect.at(1, 0) = 0.5;
    expect.at(1, 1) = 1.5;
    CHECK((fa - HermMatrix::hermitize(expect)).fro_norm() <= 1e-12);
}

TEST_CASE("squaring a quarter of the unit") {
    const HermMatrix a = 0.25 * HermMatrix::identity(3);
    const HermMatrix fa = apply_function(fn_square(), a);
    CHECK((fa - HermMatrix::scaled_identity(3, 1.0 / 16.0)).fro_norm() <= 1e-14);
}

TEST_CASE("spectral mapping of the calculus") {
    Rng rng(5);
    const ScalarFunctionSpec f = fn_sqrt();
    for (int t = 0; t < 50; ++t) {
        const int dim = 2 + t % 5;
        const HermMatrix a = rand_psd(dim, rng, 3.0);
        std::vector<double> expect = eig(a).eigenvalues;
        for (double& l : expect) l = std::sqrt(std::max(0.0, l));
        std::vector<double> got = eig(apply_function(f, a)).eigenvalues;
        std::sort(expect.begin(), expect.end());
        std::sort(got.begin(), got.end());
        for (size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - expect[i]) <= 1e-10 * std::max(1.0, expect.back()));
    }
}

TEST_CASE("jump is not applied on the kernel") {
    const HermMatrix a = HermMatrix::diagonal({2.0, 0.0});
    const HermMatrix p = apply_function(fn_indicator_jump(), a);
    CHECK((p - HermMatrix::diagonal({1.0, 0.0})).fro_norm() <= 1e-14);
}

TEST_CASE("domain violations are rejected") {
    const auto table = fn_table({{0.0, 0.0}, {1.0, 1.0}}, 0.0);
    CHECK_THROWS_AS(apply_function(table, HermMatrix::diagonal({2.0, 0.5})), DomainViolation);
}

TEST_CASE("range projection basics") {
    Rng rng(7);
    const HermMatrix inv = rand_psd(3, rng, 1.0) + HermMatrix::scaled_identity(3, 0.2);
    CHECK((range_projection(inv) - HermMatrix::identity(3)).fro_norm() <= 1e-12);
    CHECK((range_projection(HermMatrix::diagonal({2.0, 0.0})) - HermMatrix::diagonal({1.0, 0.0}))
              .fro_norm() <= 1e-14);
    // Projector onto span{(1,1)} is half the all-ones matrix.
    CHECK((range_projection(ones2()) - 0.5 * ones2()).fro_norm() <= 1e-12);
}

TEST_CASE("range projection properties") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        const int dim = 2 + t % 4;
        const HermMatrix a = rand_psd(dim, rng, 1.0);
        const HermMatrix p = range_projection(a);
        CHECK((HermMatrix::hermitize(p.mat() * p.mat()) - p).fro_norm() <= 1e-10);
        CHECK(loewner_leq(a, p));  // a <= its range projection when ||a|| <= 1
        CHECK((range_projection(p) - p).fro_norm() <= 1e-10);
    }
}

TEST_CASE("range projection is monotone on exact-order pairs") {
    Rng rng(13);
    for (int t = 0; t < 50; ++t) {
        const HermMatrix b = rand_psd(4, rng, 2.0);
        const HermMatrix a = rand_psd_between(b, rng);
        CHECK(loewner_margin(range_projection(a), range_projection(b)) >= -1e-9);
    }
}

TEST_CASE("scalar staircase follows the dyadic case split") {
    // Cell floors on [0, 1] at resolution 1: value 1 sits in ((2-1)/2, 2/2].
    CHECK(staircase_value(1.0, 0.0, 1.0, 1) == 0.5);
    CHECK(staircase_value(0.5, 0.0, 1.0, 1) == 0.0);
    CHECK(staircase_value(0.0, 0.0, 1.0, 3) == 0.0);
    // Degenerate interval maps to the floor.
    CHECK(staircase_value(1.0, 1.0, 1.0, 4) == 1.0);
}

TEST_CASE("staircase of diag(1) at resolution 1 in general mode") {
    const HermMatrix a = HermMatrix::diagonal({1.0});
    const HermMatrix s = staircase_lower(a, 1, StaircaseMode::general);
    CHECK((s - HermMatrix::diagonal({0.5})).fro_norm() <= 1e-15);
    // Invertible mode: the whole spectrum sits in the first cell at the floor.
    const HermMatrix si = staircase_lower(a, 1, StaircaseMode::invertible);
    CHECK((si - a).fro_norm() <= 1e-15);
}

TEST_CASE("staircase minorants approximate from below") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        const int dim = 2 + t % 4;
        const HermMatrix a = rand_psd(dim, rng, 2.0);
        const double beta = eig(a).lambda_max();
        HermMatrix prev(dim);
        for (int n = 1; n <= 8; ++n) {
            const HermMatrix an = staircase_lower(a, n, StaircaseMode::general);
            CHECK(loewner_margin(an, a) >= -1e-12);
            if (n > 1) CHECK(loewner_margin(prev, an) >= -1e-12);
            CHECK(spectral_norm(a - an) <= beta / std::ldexp(1.0, n) + 1e-12);
            prev = an;
        }
    }
}

TEST_CASE("invertible-mode staircase rejects singular input") {
    CHECK_THROWS_AS(staircase_lower(HermMatrix::diagonal({1.0, 0.0}), 3, StaircaseMode::invertible),
                    NotInvertible);
}

TEST_CASE("contraction conjugation inequality for operator monotone functions") {
    Rng rng(19);
    for (const ScalarFunctionSpec& f :
         {fn_sqrt(), fn_power(0.5), fn_power(0.25), fn_shifted_inverse(2.0)}) {
        for (int t = 0; t < 60; ++t) {
            const int dim = 2 + t % 4;
            const HermMatrix a = rand_psd(dim, rng, 2.0);
            const CMatrix c = rand_contraction(
                dim, rng, t % 2 == 0 ? ContractionClass::positive : ContractionClass::general);
            const HermMatrix lhs = congruence(c, apply_function(f, a));
            const HermMatrix rhs = apply_function(f, congruence(c, a));
            CHECK(loewner_margin(lhs, rhs) >= -1e-8);
        }
    }
}

TEST_CASE("f_alpha dips below zero at 0 and breaks the conjugation inequality") {
    const ScalarFunctionSpec f = fn_f_alpha(2.0);
    CHECK_FALSE(f.nonnegative_on_domain);
    CHECK(f.continuous_part(0.0) == doctest::Approx(-1.0 / 3.0));
    // c = 0 is a contraction; phi(0) = f(0) 1 < 0 = c phi(a) c.
    const HermMatrix a = HermMatrix::identity(2);
    const CMatrix c(2);
    const HermMatrix lhs = congruence(c, apply_function(f, a));
    const HermMatrix rhs = apply_function(f, congruence(c, a));
    CHECK(loewner_margin(lhs, rhs) < -0.3);
}

TEST_CASE("staircase chains converge under continuous calculus") {
    Rng rng(23);
    const CMatrix u = rand_unitary(3, rng);
    SpectralDecomp base;
    base.vectors = u;
    base.eigenvalues = {1.0, 0.7, 0.5};
    const HermMatrix a = recompose(base, base.eigenvalues);
    for (const ScalarFunctionSpec& f : {fn_sqrt(), fn_f_alpha(2.0), fn_indicator_jump()}) {
        const HermMatrix target = apply_function(f, a);
        HermMatrix prev = apply_function(f, staircase_lower(a, 1, StaircaseMode::general));
        for (int n = 2; n <= 20; ++n) {
            const HermMatrix cur = apply_function(f, staircase_lower(a, n, StaircaseMode::general));
            CHECK(loewner_margin(prev, cur) >= -1e-10);
            prev = cur;
        }
        CHECK(spectral_norm(prev - target) <= 1e-6);
    }
}

TEST_CASE("divided-difference matrix test") {
    // sqrt on (1, 2, 3): entries 1/(sqrt(t_i) + sqrt(t_j)); PSD by the minor
    // oracle and by the library route.
    const std::vector<double> pts{1.0, 2.0, 3.0};
    std::vector<std::vector<double>> m(3, std::vector<double>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = 1.0 / (std::sqrt(pts[i]) + std::sqrt(pts[j]));
    CHECK(psd_by_minors(m, 1e-12));
    CHECK(loewner_matrix_test(fn_sqrt(), pts));

    // square on (1, 4): determinant 2*8 - 5^2 = -9.
    CHECK_FALSE(loewner_matrix_test(fn_square(), {1.0, 4.0}));
    CHECK(loewner_matrix_test(fn_identity(), {0.5, 1.0, 7.0}));
    CHECK_THROWS_AS(loewner_matrix_test(fn_sqrt(), {1.0, 1.0}), DegeneratePoints);
    CHECK_THROWS_AS(loewner_matrix_test(fn_sqrt(), {-1.0, 2.0}), DegeneratePoints);
}

TEST_CASE("jump extraction at zero") {
    const auto chi = jump_decompose("chi", [](double t) { return t > 0.0 ? 1.0 : 0.0; });
    CHECK(chi.jump == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(chi.continuous_part(0.5) == doctest::Approx(0.0).epsilon(1e-9));

    const auto smooth = jump_decompose("sqrt", [](double t) { return std::sqrt(t); });
    CHECK(smooth.jump <= 1e-6);

    const auto shifted =
        jump_decompose("custom", [](double t) { return t > 0.0 ? 2.0 + std::sqrt(t) : 1.0; });
    CHECK(shifted.jump == doctest::Approx(1.0).epsilon(1e-5));

    CHECK_THROWS_AS(jump_decompose("bad", [](double t) { return t > 0.0 ? 0.0 : 1.0; }),
                    NegativeJump);
    CHECK_THROWS_AS(jump_decompose("wild", [](double t) { return t > 0.0 ? std::sin(1.0 / t) : 0.0; }),
                    NoLimit);
}

TEST_CASE("calculus is invariant under permutations of a degenerate eigenspace") {
    Rng rng(29);
    const HermMatrix a = HermMatrix::diagonal({2.0, 2.0, 1.0});
    const ScalarFunctionSpec f = fn_sqrt();
    const HermMatrix fa = apply_function(f, a);
    // Conjugate by a unitary mixing the degenerate block; images must commute
    // with the conjugation.
    CMatrix u = CMatrix::identity(3);
    const double c = std::cos(0.7), s = std::sin(0.7);
    u.at(0, 0) = c;
    u.at(0, 1) = -s;
    u.at(1, 0) = s;
    u.at(1, 1) = c;
    const HermMatrix b = congruence(u.adjoint(), a);  // u a u*
    const HermMatrix fb = apply_function(f, b);
    CHECK((fb - congruence(u.adjoint(), fa)).fro_norm() <= 1e-12);
    (void)rng;
}

TEST_CASE("table functions interpolate linearly") {
    const auto f = fn_table({{0.0, 0.0}, {1.0, 2.0}, {2.0, 3.0}}, 0.0);
    CHECK(f.eval(0.5) == doctest::Approx(1.0));
    CHECK(f.eval(1.5) == doctest::Approx(2.5));
    const HermMatrix a = HermMatrix::diagonal({2.0, 1.0});
    const HermMatrix fa = apply_function(f, a);
    CHECK((fa - HermMatrix::diagonal({3.0, 2.0})).fro_norm() <= 1e-12);
}
