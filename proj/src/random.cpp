#include "nlpm/random.hpp"

#include <cmath>

namespace nlpm {

CMatrix rand_gaussian(int dim, Rng& rng) {
    CMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g.at(i, j) = rng.cgaussian();
    return g;
}

HermMatrix rand_herm(int dim, Rng& rng) {
    return HermMatrix::hermitize(rand_gaussian(dim, rng));
}

HermMatrix rand_psd(int dim, Rng& rng, double scale) {
    const CMatrix g = rand_gaussian(dim, rng);
    HermMatrix a = HermMatrix::hermitize(g * g.adjoint());
    const double top = eig(a).lambda_max();
    const double want = scale * rng.uniform_pos();
    const double factor = top > 0.0 ? want / top : 0.0;
    return factor * a;
}

HermMatrix rand_psd_between(const HermMatrix& a, Rng& rng) {
    const HermMatrix root = sqrt_psd(a);
    const HermMatrix s = rand_psd(a.dim(), rng, 1.0);
    return HermMatrix::hermitize(root.mat() * s.mat() * root.mat());
}

CMatrix rand_contraction(int dim, Rng& rng, ContractionClass cls) {
    if (cls == ContractionClass::positive) return rand_psd(dim, rng, 1.0).mat();
    const CMatrix g = rand_gaussian(dim, rng);
    const double top = sigma_max(g);
    const double want = rng.uniform_pos();
    return (top > 0.0 ? want / top : 0.0) * g;
}

CMatrix rand_unitary(int dim, Rng& rng) {
    return eig(rand_herm(dim, rng)).vectors;
}

HermMatrix rand_projection(int dim, int rank, Rng& rng) {
    const CMatrix u = rand_unitary(dim, rng);
    CMatrix p(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx s{};
            for (int k = 0; k < rank; ++k) s += u.at(i, k) * std::conj(u.at(j, k));
            p.at(i, j) = s;
        }
    return HermMatrix::hermitize(p);
}

}  // namespace nlpm
