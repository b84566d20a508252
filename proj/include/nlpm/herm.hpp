#pragma once

#include <optional>
#include <vector>

#include "nlpm/matrix.hpp"

namespace nlpm {

struct Tolerance {
    double rtol = 1e-9;
    double atol = 1e-12;
};

// Hermitian matrix.  Construction always hermitizes, so a == a* holds
// entrywise (diagonal exactly real) for every live instance.
class HermMatrix {
public:
    HermMatrix() = default;
    explicit HermMatrix(int dim) : m_(dim) {}

    static HermMatrix hermitize(const CMatrix& x) {
        HermMatrix h(x.dim());
        const int n = x.dim();
        for (int i = 0; i < n; ++i) {
            h.m_.at(i, i) = 0.5 * (x.at(i, i).real() + std::conj(x.at(i, i)).real());
            for (int j = i + 1; j < n; ++j) {
                const cplx v = 0.5 * (x.at(i, j) + std::conj(x.at(j, i)));
                h.m_.at(i, j) = v;
                h.m_.at(j, i) = std::conj(v);
            }
        }
        return h;
    }

    static HermMatrix identity(int dim) {
        HermMatrix h(dim);
        for (int i = 0; i < dim; ++i) h.m_.at(i, i) = 1.0;
        return h;
    }

    static HermMatrix diagonal(const std::vector<double>& d) {
        HermMatrix h(static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) h.m_.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return h;
    }

    static HermMatrix scaled_identity(int dim, double s) {
        HermMatrix h(dim);
        for (int i = 0; i < dim; ++i) h.m_.at(i, i) = s;
        return h;
    }

    int dim() const { return m_.dim(); }
    const CMatrix& mat() const { return m_; }
    cplx at(int i, int j) const { return m_.at(i, j); }
    double fro_norm() const { return m_.fro_norm(); }

    friend HermMatrix operator+(const HermMatrix& a, const HermMatrix& b) {
        HermMatrix r;
        r.m_ = a.m_ + b.m_;  // conj distributes over + exactly, stays Hermitian
        return r;
    }

    friend HermMatrix operator-(const HermMatrix& a, const HermMatrix& b) {
        HermMatrix r;
        r.m_ = a.m_ - b.m_;
        return r;
    }

    friend HermMatrix operator*(double s, const HermMatrix& a) {
        HermMatrix r;
        r.m_ = s * a.m_;
        return r;
    }

    bool operator==(const HermMatrix& o) const { return m_ == o.m_; }

private:
    CMatrix m_;
};

// Eigendecomposition of a Hermitian matrix: eigenvalues sorted descending
// (ties keep the order the diagonal had after the sweep), eigenvector k in
// column k of `vectors`.
struct SpectralDecomp {
    std::vector<double> eigenvalues;
    CMatrix vectors;

    double lambda_max() const { return eigenvalues.front(); }
    double lambda_min() const { return eigenvalues.back(); }
};

// Cyclic Jacobi with complex rotations.  Deterministic: fixed sweep order,
// stable descending sort.  Throws NonConvergence if the off-diagonal mass
// does not reach atol * ||a||_F within 100 sweeps.
SpectralDecomp eig(const HermMatrix& a, Tolerance tol = {});

// Same solver with an explicit sweep cap (eig uses 100).
SpectralDecomp eig_capped(const HermMatrix& a, Tolerance tol, int max_sweeps);

// V diag(vals) V* for the given decomposition, hermitized.
HermMatrix recompose(const SpectralDecomp& d, const std::vector<double>& vals);

// Spectral norm (largest |eigenvalue|).
double spectral_norm(const HermMatrix& a, Tolerance tol = {});

// Largest singular value of a general square matrix.
double sigma_max(const CMatrix& c, Tolerance tol = {});

bool is_psd(const HermMatrix& a, Tolerance tol = {});

// lambda_min(b - a); PSD margin of the order gap, negative means violation.
double loewner_margin(const HermMatrix& a, const HermMatrix& b, Tolerance tol = {});

bool loewner_leq(const HermMatrix& a, const HermMatrix& b, Tolerance tol = {});

HermMatrix sqrt_psd(const HermMatrix& a, Tolerance tol = {});

HermMatrix inv_psd(const HermMatrix& a, Tolerance tol = {});

bool is_contraction(const CMatrix& c, Tolerance tol = {});

// c* a c, hermitized.
HermMatrix congruence(const CMatrix& c, const HermMatrix& a);

}  // namespace nlpm
