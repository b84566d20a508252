#pragma once

#include <cstdint>
#include <random>

#include "nlpm/herm.hpp"

namespace nlpm {

// Deterministic RNG.  mt19937_64 output is pinned by the standard; the
// uniform/gaussian transforms below are hand-rolled so streams do not depend
// on library internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double gaussian() {
        // Box-Muller; second deviate discarded to keep the stream simple.
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    cplx cgaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    std::uint64_t next_seed() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

enum class ContractionClass { positive, general };

CMatrix rand_gaussian(int dim, Rng& rng);

HermMatrix rand_herm(int dim, Rng& rng);

// g g* rescaled so the spectral norm is uniform in (0, scale].
HermMatrix rand_psd(int dim, Rng& rng, double scale = 1.0);

// x = a^{1/2} s a^{1/2} with s a random positive contraction, so 0 <= x <= a
// holds exactly in exact arithmetic.
HermMatrix rand_psd_between(const HermMatrix& a, Rng& rng);

// class positive: PSD with spectral norm <= 1; class general: arbitrary
// complex with largest singular value <= 1.
CMatrix rand_contraction(int dim, Rng& rng, ContractionClass cls);

// Unitary sampled as the eigenvector matrix of a random Hermitian.
CMatrix rand_unitary(int dim, Rng& rng);

// Orthogonal projection of the given rank.
HermMatrix rand_projection(int dim, int rank, Rng& rng);

// Seed-taking conveniences.
inline HermMatrix rand_psd(int dim, std::uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    return rand_psd(dim, rng, scale);
}
inline HermMatrix rand_psd_between(const HermMatrix& a, std::uint64_t seed) {
    Rng rng(seed);
    return rand_psd_between(a, rng);
}
inline CMatrix rand_contraction(int dim, std::uint64_t seed, ContractionClass cls) {
    Rng rng(seed);
    return rand_contraction(dim, rng, cls);
}

}  // namespace nlpm
