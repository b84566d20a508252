#pragma once

#include <complex>
#include <vector>

#include "nlpm/errors.hpp"

namespace nlpm {

using cplx = std::complex<double>;

// Dense square complex matrix, row major.  This is the general (not
// necessarily Hermitian) workhorse; HermMatrix wraps it with the
// self-adjointness invariant.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {}

    static CMatrix identity(int dim) {
        CMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& at(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& at(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }

    const std::vector<cplx>& data() const { return e_; }
    std::vector<cplx>& data() { return e_; }

    CMatrix adjoint() const {
        CMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
        return r;
    }

    double fro_norm() const {
        double s = 0.0;
        for (const cplx& z : e_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : e_) m = std::max(m, std::abs(z));
        return m;
    }

    friend CMatrix operator+(const CMatrix& a, const CMatrix& b) {
        check_same(a, b);
        CMatrix r(a.dim_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
        return r;
    }

    friend CMatrix operator-(const CMatrix& a, const CMatrix& b) {
        check_same(a, b);
        CMatrix r(a.dim_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
        return r;
    }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        check_same(a, b);
        const int n = a.dim_;
        CMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a.at(i, k);
                if (aik == cplx{}) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend CMatrix operator*(cplx s, const CMatrix& a) {
        CMatrix r(a.dim_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = s * a.e_[k];
        return r;
    }

    friend CMatrix operator*(double s, const CMatrix& a) { return cplx(s, 0.0) * a; }

    bool operator==(const CMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }

private:
    static void check_same(const CMatrix& a, const CMatrix& b) {
        if (a.dim_ != b.dim_) throw DimMismatch("matrix dimension mismatch");
    }

    int dim_ = 0;
    std::vector<cplx> e_;
};

inline std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x) {
    const int n = a.dim();
    if (static_cast<int>(x.size()) != n) throw DimMismatch("matvec dimension mismatch");
    std::vector<cplx> y(n);
    for (int i = 0; i < n; ++i) {
        cplx s{};
        for (int j = 0; j < n; ++j) s += a.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// <x, y> with conjugation on the second argument.
inline cplx inner(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx s{};
    for (size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
    return s;
}

// Kronecker product, used by the tensor-square map.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const int n = a.dim(), m = b.dim();
    CMatrix r(n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) r.at(i * m + k, j * m + l) = aij * b.at(k, l);
        }
    return r;
}

}  // namespace nlpm
