#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlpm/capacity.hpp"

using namespace nlpm;

namespace {

// Fixture: n = 2, mu({1}) = 0.5, mu({2}) = 0.3, mu({1,2}) = 1.
Capacity fixture2() { return Capacity(2, {0.0, 0.5, 0.3, 1.0}); }

// Independent level-set oracle for the scalar Choquet integral:
// integral of mu({x > t}) dt by fine midpoint quadrature.
double choquet_by_levels(const Capacity& mu, const std::vector<double>& x) {
    double top = 0.0;
    for (double v : x) top = std::max(top, v);
    const int steps = 200000;
    const double h = top / steps;
    double acc = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double t = (s + 0.5) * h;
        std::uint32_t mask = 0;
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] > t) mask |= 1u << i;
        acc += mu.value(mask) * h;
    }
    return acc;
}

std::vector<double> clamped_spectrum(const HermMatrix& a) {
    std::vector<double> lam = eig(a).eigenvalues;
    for (double& l : lam) l = std::max(0.0, l);
    return lam;
}

}  // namespace

TEST_CASE("capacity validation") {
    CHECK_THROWS_AS(Capacity(2, {0.1, 0.5, 0.3, 1.0}), InvalidCapacity);       // mu(empty) != 0
    CHECK_THROWS_AS(Capacity(2, {0.0, 0.5, 0.3, 0.4}), InvalidCapacity);       // not monotone
    CHECK_THROWS_AS(Capacity(2, {0.0, -0.5, 0.3, 1.0}), InvalidCapacity);      // negative
    CHECK_THROWS_AS(Capacity(2, {0.0, 0.5, 0.3}), InvalidCapacity);            // wrong length
    CHECK_NOTHROW(fixture2());
}

TEST_CASE("additive capacities give weighted sums") {
    const Capacity mu = Capacity::additive({0.2, 0.5, 0.3});
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const std::vector<double> x{rng.uniform() * 3, rng.uniform() * 3, rng.uniform() * 3};
        const double direct = 0.2 * x[0] + 0.5 * x[1] + 0.3 * x[2];
        CHECK(choquet_scalar(mu, x) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("worked scalar fixture, against the level-set oracle") {
    const Capacity mu = fixture2();
    const std::vector<double> x{1.0, 2.0};
    CHECK(choquet_scalar(mu, x) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(choquet_by_levels(mu, x) == doctest::Approx(1.3).epsilon(1e-4));
    CHECK(choquet_scalar(mu, {2.0, 2.0}) == doctest::Approx(2.0 * mu.total()).epsilon(1e-12));
    CHECK_THROWS_AS(choquet_scalar(mu, {1.0}), LengthMismatch);
    CHECK_THROWS_AS(choquet_scalar(mu, {-1.0, 1.0}), NegativeInput);
}

TEST_CASE("choquet is invariant under the tie-breaking order") {
    const Capacity mu = fixture2();
    CHECK(choquet_scalar(mu, {1.5, 1.5}) == doctest::Approx(1.5).epsilon(1e-15));
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const double v = 0.4 + rng.uniform();
        const Capacity m3 = Capacity::random_monotone(3, rng);
        const std::vector<double> x{v, v, 0.3};
        // Oracle: evaluate the sorted-difference formula with the reversed
        // tie order (index 1 before index 0); telescoping makes the tied
        // block contribute identically.
        const std::vector<int> order{1, 0, 2};
        double oracle = 0.0;
        std::uint32_t mask = 0;
        for (int i = 0; i < 3; ++i) {
            mask |= 1u << order[i];
            const double next = i + 1 < 3 ? x[order[i + 1]] : 0.0;
            oracle += (x[order[i]] - next) * m3.value(mask);
        }
        CHECK(choquet_scalar(m3, x) == doctest::Approx(oracle).epsilon(1e-14));
    }
}

TEST_CASE("matrix choquet: fixture, homogeneity, unitarity, chain dependence") {
    const Capacity mu = fixture2();
    const HermMatrix a = HermMatrix::diagonal({2.0, 1.0});
    CHECK(choquet_matrix(mu, a) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(choquet_matrix(mu, 3.0 * HermMatrix::identity(2)) ==
          doctest::Approx(3.0 * mu.total()).epsilon(1e-12));

    Rng rng(7);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 5;
        const Capacity m = Capacity::random_monotone(n, rng);
        const HermMatrix h = rand_psd(n, rng, 2.0);
        const double v = choquet_matrix(m, h);
        CHECK(choquet_scalar(m, clamped_spectrum(h)) == doctest::Approx(v).epsilon(1e-10));
        for (double alpha : {0.5, 2.0, 10.0})
            CHECK(std::abs(choquet_matrix(m, alpha * h) - alpha * v) <=
                  1e-9 * alpha * std::max(1.0, spectral_norm(h)));
        const HermMatrix rotated = congruence(rand_unitary(n, rng), h);
        CHECK(std::abs(choquet_matrix(m, rotated) - v) <= 1e-9);
    }

    // The value reads mu only along the chain {1}, {1,2}, ...: off-chain
    // perturbations that keep monotonicity leave it untouched exactly.
    Capacity mu2(2, {0.0, 0.5, 0.4, 1.0});
    CHECK(choquet_matrix(mu2, a) == choquet_matrix(fixture2(), a));
}

TEST_CASE("matrix choquet is monotone on exact-order pairs") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 4;
        const Capacity m = Capacity::random_monotone(n, rng);
        const HermMatrix b = rand_psd(n, rng, 2.0);
        const HermMatrix a = rand_psd_between(b, rng);
        CHECK(choquet_matrix(m, a) <= choquet_matrix(m, b) + 1e-9);
    }
}

TEST_CASE("operator-valued choquet") {
    Rng rng(13);
    // Scalar embedding: operator capacity mu_scalar(A) * I reproduces the
    // scalar integral on the diagonal.
    const Capacity base = fixture2();
    std::vector<HermMatrix> vals;
    for (std::uint32_t mask = 0; mask < 4; ++mask)
        vals.push_back(HermMatrix::scaled_identity(2, base.value(mask)));
    const OperatorCapacity mu(2, 2, vals);
    const HermMatrix a = HermMatrix::diagonal({2.0, 1.0});
    const HermMatrix v = choquet_matrix_operator(mu, a);
    CHECK((v - HermMatrix::scaled_identity(2, 1.5)).fro_norm() <= 1e-12);
    CHECK(choquet_matrix_operator(mu, HermMatrix(2)).fro_norm() == 0.0);

    for (int t = 0; t < 40; ++t) {
        const int n = 2 + t % 2;
        const OperatorCapacity m = OperatorCapacity::random_monotone(n, 2, rng);
        const HermMatrix y = rand_psd(n, rng, 2.0);
        const HermMatrix x = rand_psd_between(y, rng);
        CHECK(loewner_margin(choquet_matrix_operator(m, x), choquet_matrix_operator(m, y)) >=
              -1e-9);
        CHECK(is_psd(choquet_matrix_operator(m, y)));
    }
}

TEST_CASE("operator capacity validation") {
    std::vector<HermMatrix> vals(4, HermMatrix(2));
    vals[3] = -1.0 * HermMatrix::identity(2);
    CHECK_THROWS_AS(OperatorCapacity(2, 2, vals), InvalidCapacity);
}

TEST_CASE("sugeno: fixture and brute-force oracle") {
    const Capacity mu = fixture2();
    // max(min(2, 0.3), min(1, 1)) = 1.
    CHECK(sugeno_scalar(mu, {1.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-15));
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 3;
        const Capacity m = Capacity::random_monotone(n, rng);
        std::vector<double> x(n);
        for (double& v : x) v = 2.0 * rng.uniform();
        // Brute force over sorted prefixes.
        std::vector<double> sorted = x;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int i, int j) { return x[i] > x[j]; });
        double brute = 0.0;
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i) {
            mask |= 1u << idx[i];
            brute = std::max(brute, std::min(sorted[i], m.value(mask)));
        }
        CHECK(sugeno_scalar(m, x) == doctest::Approx(brute).epsilon(1e-15));
    }
    CHECK(sugeno_scalar(mu, {0.2, 0.2}) == doctest::Approx(std::min(0.2, mu.total())));
}

TEST_CASE("sugeno matrix path agrees with the sorted scalar path and is monotone") {
    Rng rng(19);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 3;
        const Capacity m = Capacity::random_monotone(n, rng);
        const HermMatrix b = rand_psd(n, rng, 2.0);
        CHECK(sugeno_matrix(m, b) ==
              doctest::Approx(sugeno_scalar(m, clamped_spectrum(b))).epsilon(1e-12));
        const HermMatrix a = rand_psd_between(b, rng);
        CHECK(sugeno_matrix(m, a) <= sugeno_matrix(m, b) + 1e-9);
        const HermMatrix rotated = congruence(rand_unitary(n, rng), b);
        CHECK(std::abs(sugeno_matrix(m, rotated) - sugeno_matrix(m, b)) <= 1e-9);
    }
}

TEST_CASE("sugeno is not positively homogeneous once scaling passes the capacity range") {
    const Capacity mu(2, {0.0, 0.3, 0.3, 1.0});
    const HermMatrix eye = HermMatrix::identity(2);
    const double v1 = sugeno_matrix(mu, eye);
    const double v3 = sugeno_matrix(mu, 3.0 * eye);
    CHECK(v1 == doctest::Approx(1.0));
    CHECK(v3 == doctest::Approx(1.0));  // capped by mu(omega), not 3 * v1
    CHECK(std::abs(v3 - 3.0 * v1) > 0.5);
}

TEST_CASE("inclusion-exclusion with the min kernel recovers choquet") {
    Rng rng(23);
    const InteractionOperator imin = interaction_min();
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 5;
        const Capacity m = Capacity::random_monotone(n, rng);
        const HermMatrix a = rand_psd(n, rng, 2.0);
        CHECK(std::abs(inclusion_exclusion_matrix(m, a, imin, 2.0) - choquet_matrix(m, a)) <=
              1e-9);
    }
}

TEST_CASE("inclusion-exclusion with the product kernel against the literal double loop") {
    const Capacity mu = fixture2();
    const HermMatrix a = HermMatrix::diagonal({1.0, 0.5});
    const InteractionOperator prod = interaction_product();
    const std::vector<double> lam{1.0, 0.5};
    double brute = 0.0;
    for (std::uint32_t A = 1; A < 4; ++A) {
        double inner = 0.0;
        for (std::uint32_t B = 0; B < 4; ++B) {
            if ((B & A) != A) continue;  // B must contain A
            double ip = 1.0;
            for (int i = 0; i < 2; ++i)
                if (B & (1u << i)) ip *= lam[i];
            int extra = 0;
            for (int i = 0; i < 2; ++i)
                if ((B & (1u << i)) && !(A & (1u << i))) ++extra;
            inner += (extra % 2 == 0 ? 1.0 : -1.0) * ip;
        }
        brute += inner * mu.value(A);
    }
    CHECK(inclusion_exclusion_matrix(mu, a, prod, 1.0) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(inclusion_exclusion_matrix(mu, HermMatrix(2), prod, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("inclusion-exclusion enforces the spectral bound and kernel monotonicity helps") {
    const Capacity mu = fixture2();
    CHECK_THROWS_AS(
        inclusion_exclusion_matrix(mu, HermMatrix::diagonal({3.0, 1.0}), interaction_min(), 2.0),
        SpectrumOutOfRange);
    CHECK(interaction_monotone_sampled(interaction_min(), 3, 2.0, 100, 0));
    CHECK(interaction_monotone_sampled(interaction_product(), 3, 1.0, 100, 0));
    // Product-kernel integrals are monotone for spectra inside [0, 1].
    Rng rng(29);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 3;
        const Capacity m = Capacity::random_monotone(n, rng);
        const HermMatrix b = rand_psd(n, rng, 1.0);
        const HermMatrix a = rand_psd_between(b, rng);
        CHECK(inclusion_exclusion_matrix(m, a, interaction_product(), 1.0) <=
              inclusion_exclusion_matrix(m, b, interaction_product(), 1.0) + 1e-9);
    }
}

TEST_CASE("operator-capacity inclusion-exclusion with min matches operator choquet") {
    Rng rng(31);
    for (int t = 0; t < 25; ++t) {
        const int n = 2 + t % 2;
        const OperatorCapacity m = OperatorCapacity::random_monotone(n, 2, rng);
        const HermMatrix a = rand_psd(n, rng, 1.5);
        const HermMatrix lhs = inclusion_exclusion_matrix(m, a, interaction_min(), 1.5);
        const HermMatrix rhs = choquet_matrix_operator(m, a);
        CHECK((lhs - rhs).fro_norm() <= 1e-9);
    }
}

TEST_CASE("moebius transform") {
    // Additive capacity: mass only on singletons.
    const Capacity add = Capacity::additive({0.2, 0.5, 0.3});
    const std::vector<double> mass = mobius(add);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const int bits = __builtin_popcount(mask);
        if (bits == 1)
            CHECK(mass[mask] > 0.0);
        else
            CHECK(std::abs(mass[mask]) <= 1e-12);
    }

    // Unanimity game: the mass is the indicator of the coalition.
    const Capacity u = Capacity::unanimity(3, 0b011);
    const std::vector<double> um = mobius(u);
    for (std::uint32_t mask = 0; mask < 8; ++mask)
        CHECK(um[mask] == doctest::Approx(mask == 0b011 ? 1.0 : 0.0));

    // Round trip, against the direct definition sum.
    Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        const Capacity c = Capacity::random_monotone(5, rng);
        const std::vector<double> m = mobius(c);
        for (std::uint32_t mask = 0; mask < 32; ++mask) {
            double direct = 0.0;
            for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
                int extra = __builtin_popcount(mask ^ sub);
                direct += (extra % 2 == 0 ? 1.0 : -1.0) * c.value(sub);
                if (sub == 0) break;
            }
            CHECK(std::abs(m[mask] - direct) <= 1e-12);
        }
        const Capacity back = capacity_from_mobius(m);
        for (std::uint32_t mask = 0; mask < 32; ++mask)
            CHECK(std::abs(back.value(mask) - c.value(mask)) <= 1e-12);
    }

    // Reconstruction from masses violating monotonicity is rejected.
    CHECK_THROWS_AS(capacity_from_mobius({0.0, 1.0, 1.0, -1.5}), InvalidCapacity);
}
