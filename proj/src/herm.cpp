#include "nlpm/herm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nlpm {

namespace {

double offdiag_sq(const CMatrix& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) s += std::norm(a.at(p, q));
    return 2.0 * s;
}

}  // namespace

SpectralDecomp eig(const HermMatrix& h, Tolerance tol) { return eig_capped(h, tol, 100); }

SpectralDecomp eig_capped(const HermMatrix& h, Tolerance tol, int max_sweeps) {
    const int n = h.dim();
    CMatrix a = h.mat();
    CMatrix v = CMatrix::identity(n);

    const double fro = a.fro_norm();
    const double target = tol.atol * fro;  // relative: small-norm input, small target
    const double target_sq = target * target;
    // Entries this small cannot keep the off-diagonal mass above target.
    const double skip = target / (2.0 * std::max(1, n));

    if (n > 1) {
        int sweep = 0;
        while (offdiag_sq(a) > target_sq) {
            if (sweep++ >= max_sweeps)
                throw NonConvergence("jacobi eigensolver: off-diagonal norm above target after " +
                                     std::to_string(max_sweeps) + " sweeps");
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const cplx apq = a.at(p, q);
                    const double r = std::abs(apq);
                    if (r <= skip) continue;
                    const cplx w = apq / r;  // phase of the pivot
                    const double app = a.at(p, p).real();
                    const double aqq = a.at(q, q).real();
                    // Real Jacobi angle for the phase-reduced 2x2 block.
                    const double theta = (aqq - app) / (2.0 * r);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;

                    // Unitary J: J_pp = c, J_pq = s, J_qp = -conj(w) s, J_qq = conj(w) c.
                    // Update A <- J* A J keeping it exactly Hermitian.
                    for (int i = 0; i < n; ++i) {
                        if (i == p || i == q) continue;
                        const cplx aip = a.at(i, p);
                        const cplx aiq = a.at(i, q);
                        const cplx nip = c * aip - std::conj(w) * s * aiq;
                        const cplx niq = s * aip + std::conj(w) * c * aiq;
                        a.at(i, p) = nip;
                        a.at(p, i) = std::conj(nip);
                        a.at(i, q) = niq;
                        a.at(q, i) = std::conj(niq);
                    }
                    a.at(p, p) = app - t * r;
                    a.at(q, q) = aqq + t * r;
                    a.at(p, q) = 0.0;
                    a.at(q, p) = 0.0;

                    for (int i = 0; i < n; ++i) {
                        const cplx vip = v.at(i, p);
                        const cplx viq = v.at(i, q);
                        v.at(i, p) = c * vip - std::conj(w) * s * viq;
                        v.at(i, q) = s * vip + std::conj(w) * c * viq;
                    }
                }
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int i, int j) { return a.at(i, i).real() > a.at(j, j).real(); });

    SpectralDecomp d;
    d.eigenvalues.resize(n);
    d.vectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        d.eigenvalues[k] = a.at(idx[k], idx[k]).real();
        for (int i = 0; i < n; ++i) d.vectors.at(i, k) = v.at(i, idx[k]);
    }
    return d;
}

HermMatrix recompose(const SpectralDecomp& d, const std::vector<double>& vals) {
    const int n = d.vectors.dim();
    if (static_cast<int>(vals.size()) != n) throw DimMismatch("recompose: value count != dim");
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cplx s{};
            for (int k = 0; k < n; ++k) s += vals[k] * d.vectors.at(i, k) * std::conj(d.vectors.at(j, k));
            r.at(i, j) = s;
            r.at(j, i) = std::conj(s);
        }
    return HermMatrix::hermitize(r);
}

double spectral_norm(const HermMatrix& a, Tolerance tol) {
    const SpectralDecomp d = eig(a, tol);
    double m = 0.0;
    for (double l : d.eigenvalues) m = std::max(m, std::abs(l));
    return m;
}

double sigma_max(const CMatrix& c, Tolerance tol) {
    const HermMatrix gram = HermMatrix::hermitize(c.adjoint() * c);
    const SpectralDecomp d = eig(gram, tol);
    return std::sqrt(std::max(0.0, d.lambda_max()));
}

bool is_psd(const HermMatrix& a, Tolerance tol) {
    const SpectralDecomp d = eig(a, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    return d.lambda_min() >= -(tol.rtol * lmax_abs + tol.atol);
}

double loewner_margin(const HermMatrix& a, const HermMatrix& b, Tolerance tol) {
    if (a.dim() != b.dim()) throw DimMismatch("loewner comparison: dimension mismatch");
    return eig(b - a, tol).lambda_min();
}

bool loewner_leq(const HermMatrix& a, const HermMatrix& b, Tolerance tol) {
    if (a.dim() != b.dim()) throw DimMismatch("loewner comparison: dimension mismatch");
    return is_psd(b - a, tol);
}

HermMatrix sqrt_psd(const HermMatrix& a, Tolerance tol) {
    SpectralDecomp d = eig(a, tol);
    const double thr = tol.rtol * std::abs(d.lambda_max()) + tol.atol;
    std::vector<double> vals(d.eigenvalues.size());
    for (size_t k = 0; k < vals.size(); ++k) {
        const double l = d.eigenvalues[k];
        if (l < -thr) throw NotPsd("sqrt_psd: negative eigenvalue");
        vals[k] = std::sqrt(std::max(0.0, l));
    }
    return recompose(d, vals);
}

HermMatrix inv_psd(const HermMatrix& a, Tolerance tol) {
    SpectralDecomp d = eig(a, tol);
    double lmax_abs = 0.0;
    for (double l : d.eigenvalues) lmax_abs = std::max(lmax_abs, std::abs(l));
    if (d.lambda_min() <= tol.rtol * lmax_abs + tol.atol)
        throw Singular("inv_psd: smallest eigenvalue below invertibility margin");
    std::vector<double> vals(d.eigenvalues.size());
    for (size_t k = 0; k < vals.size(); ++k) vals[k] = 1.0 / d.eigenvalues[k];
    return recompose(d, vals);
}

bool is_contraction(const CMatrix& c, Tolerance tol) {
    return sigma_max(c, tol) <= 1.0 + tol.rtol;
}

HermMatrix congruence(const CMatrix& c, const HermMatrix& a) {
    if (c.dim() != a.dim()) throw DimMismatch("congruence: dimension mismatch");
    return HermMatrix::hermitize(c.adjoint() * a.mat() * c);
}

}  // namespace nlpm
